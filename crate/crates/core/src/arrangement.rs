//! Curve arrangements on a surface, with exact divisor arithmetic.
//!
//! A surface is presented combinatorially: a finite list of curves with
//! genus and self-intersection, a symmetric pairwise intersection table,
//! a list of transversal crossing points, the canonical class, and the
//! topological Euler number. Everything downstream (Chern numbers,
//! ampleness certificates, quotient bookkeeping) is computed from this
//! data alone.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, is_integer, rat, Rat};

/// Index of a curve inside one arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveId(pub usize);

/// One smooth irreducible curve of the arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    pub genus: u64,
    /// Integer-valued by invariant; kept as `Rat` so all arithmetic shares
    /// one kernel. Validated on construction.
    pub self_int: Rat,
    /// Curves that may carry an orbifold weight. Numerical-class stand-ins
    /// (a "general fiber") are kept in the arrangement for canonical-class
    /// bookkeeping but may not be weighted.
    pub orbifold_candidate: bool,
}

impl Curve {
    /// Topological Euler number `2 - 2g`.
    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64
    }
}

/// A transversal crossing point: at least two pairwise-distinct curves
/// meeting with multiplicity one each. Tangential or higher-multiplicity
/// contact is rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingPoint {
    pub name: String,
    pub incident: Vec<CurveId>,
}

/// The canonical class, in one of the two forms the catalogue needs:
/// an explicit numerical combination of arrangement curves, or a bare
/// table of pairings together with the self-intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalClass {
    Combination(Vec<(CurveId, Rat)>),
    Pairings { k_sq: Rat, with_curves: Vec<Rat> },
}

/// A Q-divisor supported on arrangement curves.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QDivisor {
    pub coeffs: Vec<(CurveId, Rat)>,
}

impl QDivisor {
    pub fn zero() -> Self {
        QDivisor { coeffs: vec![] }
    }

    pub fn from_map(map: BTreeMap<CurveId, Rat>) -> Self {
        QDivisor {
            coeffs: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn coefficient(&self, id: CurveId) -> Rat {
        self.coeffs
            .iter()
            .find(|(c, _)| *c == id)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| rat(0))
    }
}

/// Outcome of the adjunction check for one curve.
#[derive(Debug, Clone)]
pub struct AdjunctionLine {
    pub curve: String,
    pub lhs_2g_minus_2: Rat,
    pub k_dot_c: Rat,
    pub c_sq: Rat,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct AdjunctionReport {
    pub lines: Vec<AdjunctionLine>,
}

impl AdjunctionReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

/// Specification of one blowup point: the set of arrangement curves passing
/// through it (pairwise transversally), plus a name for the new exceptional
/// curve.
#[derive(Debug, Clone)]
pub struct BlowupPoint {
    pub exceptional_name: String,
    pub through: Vec<CurveId>,
}

/// A surface presented as a finite curve arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    curves: Vec<Curve>,
    /// Symmetric matrix of pairwise intersection counts; diagonal unused
    /// (self-intersections live on the curves).
    intersections: Vec<Vec<u64>>,
    crossings: Vec<CrossingPoint>,
    canonical: Option<CanonicalClass>,
    euler: i64,
    by_name: BTreeMap<String, CurveId>,
}

impl Arrangement {
    pub fn new(
        curves: Vec<Curve>,
        pair_counts: &[(CurveId, CurveId, u64)],
        crossings: Vec<CrossingPoint>,
        canonical: Option<CanonicalClass>,
        euler: i64,
    ) -> Result<Self> {
        let n = curves.len();
        let mut by_name = BTreeMap::new();
        for (i, c) in curves.iter().enumerate() {
            if !is_integer(&c.self_int) {
                return Err(Error::input(format!(
                    "curve {} has non-integral self-intersection {}",
                    c.name,
                    fmt_rat(&c.self_int)
                )));
            }
            if by_name.insert(c.name.clone(), CurveId(i)).is_some() {
                return Err(Error::input(format!("duplicate curve name {}", c.name)));
            }
        }
        let mut intersections = vec![vec![0u64; n]; n];
        for &(a, b, m) in pair_counts {
            Self::check_id(n, a)?;
            Self::check_id(n, b)?;
            if a == b {
                return Err(Error::input(format!(
                    "pairwise intersection declared on the diagonal for curve {}",
                    curves[a.0].name
                )));
            }
            intersections[a.0][b.0] = m;
            intersections[b.0][a.0] = m;
        }
        let arr = Arrangement {
            curves,
            intersections,
            crossings,
            canonical,
            euler,
            by_name,
        };
        arr.validate()?;
        Ok(arr)
    }

    fn check_id(n: usize, id: CurveId) -> Result<()> {
        if id.0 >= n {
            return Err(Error::input(format!("unknown curve index {}", id.0)));
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        for p in &self.crossings {
            if p.incident.len() < 2 {
                return Err(Error::input(format!(
                    "crossing {} has fewer than two incident curves",
                    p.name
                )));
            }
            let mut seen = p.incident.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != p.incident.len() {
                return Err(Error::input(format!(
                    "crossing {} lists a curve twice (tangential contact is not modeled)",
                    p.name
                )));
            }
            for &c in &p.incident {
                Self::check_id(self.curves.len(), c)?;
            }
        }
        // Crossing incidences cannot exceed the declared intersection counts.
        for i in 0..self.curves.len() {
            for j in (i + 1)..self.curves.len() {
                let through_both = self
                    .crossings
                    .iter()
                    .filter(|p| {
                        p.incident.contains(&CurveId(i)) && p.incident.contains(&CurveId(j))
                    })
                    .count() as u64;
                if through_both > self.intersections[i][j] {
                    return Err(Error::input(format!(
                        "{} crossing points on ({}, {}) but intersection number is {}",
                        through_both,
                        self.curves[i].name,
                        self.curves[j].name,
                        self.intersections[i][j]
                    )));
                }
            }
        }
        if let Some(CanonicalClass::Combination(coeffs)) = &self.canonical {
            for (id, _) in coeffs {
                Self::check_id(self.curves.len(), *id)?;
            }
            // Derived pairings of a combination must be integral.
            for i in 0..self.curves.len() {
                let v = self.canonical_dot(CurveId(i))?;
                if !is_integer(&v) {
                    return Err(Error::input(format!(
                        "canonical pairing with {} is non-integral: {}",
                        self.curves[i].name,
                        fmt_rat(&v)
                    )));
                }
            }
            let k2 = self.k_sq()?;
            if !is_integer(&k2) {
                return Err(Error::input(format!(
                    "K^2 derived from the combination is non-integral: {}",
                    fmt_rat(&k2)
                )));
            }
        }
        if let Some(CanonicalClass::Pairings { with_curves, .. }) = &self.canonical {
            if with_curves.len() != self.curves.len() {
                return Err(Error::input(format!(
                    "canonical pairing table has {} entries for {} curves",
                    with_curves.len(),
                    self.curves.len()
                )));
            }
        }
        Ok(())
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn curve(&self, id: CurveId) -> &Curve {
        &self.curves[id.0]
    }

    pub fn crossings(&self) -> &[CrossingPoint] {
        &self.crossings
    }

    pub fn euler_surface(&self) -> i64 {
        self.euler
    }

    pub fn canonical(&self) -> Option<&CanonicalClass> {
        self.canonical.as_ref()
    }

    pub fn id_of(&self, name: &str) -> Result<CurveId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown curve `{name}`")))
    }

    pub fn intersection_count(&self, a: CurveId, b: CurveId) -> u64 {
        self.intersections[a.0][b.0]
    }

    /// Intersection pairing of two curves, with self-intersection on the
    /// diagonal.
    pub fn dot(&self, a: CurveId, b: CurveId) -> Rat {
        if a == b {
            self.curves[a.0].self_int.clone()
        } else {
            rat(self.intersections[a.0][b.0] as i64)
        }
    }

    /// Bilinear extension of the intersection form to Q-divisors.
    pub fn pair(&self, d1: &QDivisor, d2: &QDivisor) -> Result<Rat> {
        let n = self.curves.len();
        let mut acc = rat(0);
        for (a, ca) in &d1.coeffs {
            Self::check_id(n, *a)?;
            for (b, cb) in &d2.coeffs {
                Self::check_id(n, *b)?;
                acc += ca * cb * self.dot(*a, *b);
            }
        }
        Ok(acc)
    }

    /// `K . C` for one curve, from whichever canonical form is present.
    pub fn canonical_dot(&self, c: CurveId) -> Result<Rat> {
        match &self.canonical {
            None => Err(Error::unsupported(
                "canonical class is not declared for this arrangement",
            )),
            Some(CanonicalClass::Combination(coeffs)) => {
                let mut acc = rat(0);
                for (id, co) in coeffs {
                    acc += co * self.dot(*id, c);
                }
                Ok(acc)
            }
            Some(CanonicalClass::Pairings { with_curves, .. }) => Ok(with_curves[c.0].clone()),
        }
    }

    /// `K . D` extended bilinearly to a Q-divisor.
    pub fn canonical_pair(&self, d: &QDivisor) -> Result<Rat> {
        let mut acc = rat(0);
        for (id, co) in &d.coeffs {
            Self::check_id(self.curves.len(), *id)?;
            acc += co * self.canonical_dot(*id)?;
        }
        Ok(acc)
    }

    /// `K^2`.
    pub fn k_sq(&self) -> Result<Rat> {
        match &self.canonical {
            None => Err(Error::unsupported(
                "canonical class is not declared for this arrangement",
            )),
            Some(CanonicalClass::Combination(coeffs)) => {
                let d = QDivisor {
                    coeffs: coeffs.clone(),
                };
                self.pair(&d, &d)
            }
            Some(CanonicalClass::Pairings { k_sq, .. }) => Ok(k_sq.clone()),
        }
    }

    /// Checks `2g - 2 = K.C + C^2` for every curve. Failures are report
    /// entries, not errors.
    pub fn adjunction_check(&self) -> Result<AdjunctionReport> {
        let mut lines = Vec::new();
        for (i, c) in self.curves.iter().enumerate() {
            let lhs = rat(c.euler()) * rat(-1);
            let k_dot = self.canonical_dot(CurveId(i))?;
            let rhs = &k_dot + &c.self_int;
            lines.push(AdjunctionLine {
                curve: c.name.clone(),
                pass: lhs == rhs,
                lhs_2g_minus_2: lhs,
                k_dot_c: k_dot,
                c_sq: c.self_int.clone(),
            });
        }
        Ok(AdjunctionReport { lines })
    }

    /// Self-intersection forced by adjunction: `2g - 2 - K.C`.
    pub fn derive_self_int(&self, c: CurveId) -> Result<Rat> {
        let g = rat(self.curves[c.0].genus as i64);
        Ok(rat(2) * g - rat(2) - self.canonical_dot(c)?)
    }

    /// Blow up the arrangement at the given points.
    ///
    /// Each point carries the set of curves through it; the declared
    /// intersection numbers must be able to absorb the separation (an error
    /// otherwise). Per point: a new exceptional curve with self-intersection
    /// -1 appears, incident curves lose 1 from their self-intersection and
    /// from their mutual intersection counts, gain intersection 1 with the
    /// new curve, the canonical class gains the new curve with coefficient 1,
    /// and the surface Euler number grows by 1. A declared crossing matching
    /// the point's incident set is consumed; new crossings between the
    /// exceptional curve and each incident curve are recorded.
    pub fn blowup(&self, points: &[BlowupPoint]) -> Result<Arrangement> {
        let mut curves = self.curves.clone();
        let mut inter = self.intersections.clone();
        let mut crossings = self.crossings.clone();
        let mut euler = self.euler;
        let mut canonical = self.canonical.clone();

        for p in points {
            let n = curves.len();
            for &c in &p.through {
                Self::check_id(self.curves.len(), c)?;
            }
            let mut sorted = p.through.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != p.through.len() {
                return Err(Error::input(format!(
                    "blowup point {} lists a curve twice",
                    p.exceptional_name
                )));
            }
            // Every pair of curves through the point must still have an
            // intersection available there.
            for (ai, &a) in p.through.iter().enumerate() {
                for &b in &p.through[ai + 1..] {
                    if inter[a.0][b.0] == 0 {
                        return Err(Error::input(format!(
                            "curves {} and {} have no remaining intersection at blowup point {}",
                            curves[a.0].name, curves[b.0].name, p.exceptional_name
                        )));
                    }
                    inter[a.0][b.0] -= 1;
                    inter[b.0][a.0] -= 1;
                }
            }
            // Consume one declared crossing with exactly this incident set,
            // if present.
            if let Some(pos) = crossings.iter().position(|x| {
                let mut inc = x.incident.clone();
                inc.sort();
                inc == sorted
            }) {
                crossings.remove(pos);
            }
            let e_id = CurveId(n);
            for row in inter.iter_mut() {
                row.push(0);
            }
            inter.push(vec![0u64; n + 1]);
            for &c in &p.through {
                curves[c.0].self_int -= rat(1);
                inter[c.0][n] = 1;
                inter[n][c.0] = 1;
                crossings.push(CrossingPoint {
                    name: format!("{}*{}", p.exceptional_name, curves[c.0].name),
                    incident: vec![e_id, c],
                });
            }
            curves.push(Curve {
                name: p.exceptional_name.clone(),
                genus: 0,
                self_int: rat(-1),
                orbifold_candidate: true,
            });
            euler += 1;
            canonical = match canonical {
                None => None,
                Some(CanonicalClass::Combination(mut coeffs)) => {
                    coeffs.push((e_id, rat(1)));
                    Some(CanonicalClass::Combination(coeffs))
                }
                Some(CanonicalClass::Pairings { k_sq, with_curves }) => {
                    // K' = pullback(K) + E: K'.E = -1, K'.C = K.C + (points on C),
                    // K'^2 = K^2 - 1.
                    let mut with_curves = with_curves;
                    for &c in &p.through {
                        with_curves[c.0] += rat(1);
                    }
                    with_curves.push(rat(-1));
                    Some(CanonicalClass::Pairings {
                        k_sq: k_sq - rat(1),
                        with_curves,
                    })
                }
            };
        }

        let mut by_name = BTreeMap::new();
        for (i, c) in curves.iter().enumerate() {
            if by_name.insert(c.name.clone(), CurveId(i)).is_some() {
                return Err(Error::input(format!("duplicate curve name {}", c.name)));
            }
        }
        let arr = Arrangement {
            curves,
            intersections: inter,
            crossings,
            canonical,
            euler,
            by_name,
        };
        arr.validate()?;
        Ok(arr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    fn curve(name: &str, genus: u64, self_int: i64) -> Curve {
        Curve {
            name: name.into(),
            genus,
            self_int: rat(self_int),
            orbifold_candidate: true,
        }
    }

    /// The product of two genus-2 curves carrying the five graph curves,
    /// before blowing up.
    fn product_surface() -> Arrangement {
        let mut curves: Vec<Curve> = (0..5).map(|j| curve(&format!("C{j}"), 2, -2)).collect();
        let mut ch = curve("Ch", 2, 0);
        ch.orbifold_candidate = false;
        let mut cv = curve("Cv", 2, 0);
        cv.orbifold_candidate = false;
        curves.push(ch);
        curves.push(cv);
        let mut pairs = vec![];
        for i in 0..5usize {
            for j in (i + 1)..5 {
                pairs.push((CurveId(i), CurveId(j), 3));
            }
            pairs.push((CurveId(i), CurveId(5), 1));
            pairs.push((CurveId(i), CurveId(6), 1));
        }
        pairs.push((CurveId(5), CurveId(6), 1));
        let crossings = (0..3)
            .map(|k| CrossingPoint {
                name: format!("x{k}"),
                incident: (0..5).map(CurveId).collect(),
            })
            .collect();
        let canonical = CanonicalClass::Combination(vec![
            (CurveId(5), rat(2)),
            (CurveId(6), rat(2)),
        ]);
        Arrangement::new(curves, &pairs, crossings, Some(canonical), 4).unwrap()
    }

    #[test]
    fn product_surface_data() {
        let x = product_surface();
        assert_eq!(x.k_sq().unwrap(), rat(8));
        // K.C_j = 2(Ch + Cv).C_j = 4, so adjunction forces C_j^2 = -2.
        assert_eq!(x.canonical_dot(CurveId(0)).unwrap(), rat(4));
        assert_eq!(x.derive_self_int(CurveId(0)).unwrap(), rat(-2));
        assert!(x.adjunction_check().unwrap().all_pass());
    }

    #[test]
    fn blowup_three_triple_points() {
        let x = product_surface();
        let points: Vec<BlowupPoint> = (0..3)
            .map(|k| BlowupPoint {
                exceptional_name: format!("E{k}"),
                through: (0..5).map(CurveId).collect(),
            })
            .collect();
        let y = x.blowup(&points).unwrap();
        assert_eq!(y.euler_surface(), 7);
        assert_eq!(y.k_sq().unwrap(), rat(5));
        let d0 = y.id_of("C0").unwrap();
        assert_eq!(y.curve(d0).self_int, rat(-5));
        assert_eq!(y.canonical_dot(d0).unwrap(), rat(7));
        let e0 = y.id_of("E0").unwrap();
        assert_eq!(y.canonical_dot(e0).unwrap(), rat(-1));
        assert_eq!(y.intersection_count(d0, y.id_of("C1").unwrap()), 0);
        assert_eq!(y.intersection_count(d0, e0), 1);
        assert!(y.adjunction_check().unwrap().all_pass());
    }

    #[test]
    fn blowup_point_off_all_curves() {
        let x = product_surface();
        let y = x
            .blowup(&[BlowupPoint {
                exceptional_name: "E".into(),
                through: vec![],
            }])
            .unwrap();
        assert_eq!(y.euler_surface(), 5);
        assert_eq!(y.k_sq().unwrap(), rat(7));
        let e = y.id_of("E").unwrap();
        assert_eq!(y.curve(e).self_int, rat(-1));
        assert_eq!(y.canonical_dot(e).unwrap(), rat(-1));
        // Other curves untouched.
        assert_eq!(y.curve(y.id_of("C0").unwrap()).self_int, rat(-2));
    }

    #[test]
    fn blowup_rejects_separated_curves() {
        let x = product_surface();
        // Ch and Cv meet once; using that point twice must fail.
        let spec = BlowupPoint {
            exceptional_name: "E".into(),
            through: vec![CurveId(5), CurveId(6)],
        };
        let once = x.blowup(&[spec.clone()]).unwrap();
        assert!(once
            .blowup(&[BlowupPoint {
                exceptional_name: "F".into(),
                through: vec![CurveId(5), CurveId(6)],
            }])
            .is_err());
        assert!(x.blowup(&[spec.clone(), spec]).is_err());
    }

    #[test]
    fn pairing_is_bilinear_and_symmetric() {
        let x = product_surface();
        let d1 = QDivisor {
            coeffs: vec![(CurveId(0), frac(1, 2)), (CurveId(5), rat(3))],
        };
        let d2 = QDivisor {
            coeffs: vec![(CurveId(1), frac(-2, 7)), (CurveId(6), rat(1))],
        };
        assert_eq!(x.pair(&d1, &d2).unwrap(), x.pair(&d2, &d1).unwrap());
        assert_eq!(x.pair(&QDivisor::zero(), &d1).unwrap(), rat(0));
        let bad = QDivisor {
            coeffs: vec![(CurveId(99), rat(1))],
        };
        assert!(x.pair(&bad, &d1).is_err());
    }

    #[test]
    fn exceptional_curve_adjunction() {
        // genus 0 with K.C = -1 and C^2 = -1 passes.
        let arr = Arrangement::new(
            vec![curve("E", 0, -1)],
            &[],
            vec![],
            Some(CanonicalClass::Pairings {
                k_sq: rat(0),
                with_curves: vec![rat(-1)],
            }),
            1,
        )
        .unwrap();
        assert!(arr.adjunction_check().unwrap().all_pass());
        assert_eq!(arr.derive_self_int(CurveId(0)).unwrap(), rat(-1));
    }

    #[test]
    fn non_integral_self_intersection_rejected() {
        let bad = Curve {
            name: "C".into(),
            genus: 0,
            self_int: frac(1, 2),
            orbifold_candidate: true,
        };
        assert!(Arrangement::new(vec![bad], &[], vec![], None, 1).is_err());
    }
}
