//! Numeric Coxeter-mutation orbits at exact rational start points.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{Point, Rational};
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("start point has {found} coordinates, quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("start coordinate {vertex} is zero")]
    ZeroStartCoordinate { vertex: usize },
    #[error("non-generic specialization: coordinate {vertex} vanishes at step {step}")]
    NonGeneric {
        step: usize,
        vertex: usize,
        partial: Box<OrbitRecord>,
    },
    #[error("bit budget exceeded at step {step}: a coordinate needs {bits} bits (limit {limit})")]
    BudgetExceeded { step: usize, bits: u64, limit: u64 },
    #[error("quiver is not admissibly labelled")]
    NotAdmissible,
}

/// Points `P_0, ..., P_T` of an orbit.
///
/// `generic_up_to` is the last step whose point was recorded with all
/// coordinates nonzero; genericity is certified only that far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    pub quiver: Quiver,
    pub points: Vec<Point>,
    pub generic_up_to: usize,
    pub period: Option<usize>,
}

/// Why a single step could not produce a generic point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepFailure {
    /// Coordinate `vertex` (1-based) became zero.
    Zero { vertex: usize },
    /// A coordinate needed more than the allowed number of bits.
    TooLarge { bits: u64 },
}

/// One Coxeter step `P_t -> P_{t+1}`: for `i = 1..n`, in place,
/// `f_i <- (1 + prod_{j->i} f_j^m * prod_{i->j} f_j^m) / f_i`.
///
/// Inputs must have nonzero coordinates. Each updated coordinate is checked
/// against `max_bits` as soon as it is formed, so a runaway step stops early.
pub fn forward_step(q: &Quiver, p: &[Rational], max_bits: u64) -> Result<Point, StepFailure> {
    let mut f = p.to_vec();
    for i in 0..q.n() {
        exchange(q, &mut f, i);
        if f[i].is_zero() {
            return Err(StepFailure::Zero { vertex: i + 1 });
        }
        let bits = bit_size(&f[i]);
        if bits > max_bits {
            return Err(StepFailure::TooLarge { bits });
        }
    }
    Ok(f)
}

/// `mu_1 o ... o mu_n`: the same exchanges in the order `n, ..., 1`.
pub fn inverse_step(q: &Quiver, p: &[Rational]) -> Result<Point, OrbitError> {
    if p.len() != q.n() {
        return Err(OrbitError::DimensionMismatch {
            expected: q.n(),
            found: p.len(),
        });
    }
    if let Some(i) = p.iter().position(|c| c.is_zero()) {
        return Err(OrbitError::ZeroStartCoordinate { vertex: i + 1 });
    }
    let mut f = p.to_vec();
    for i in (0..q.n()).rev() {
        exchange(q, &mut f, i);
        if f[i].is_zero() {
            return Err(OrbitError::NonGeneric {
                step: 1,
                vertex: i + 1,
                partial: Box::new(OrbitRecord {
                    quiver: q.clone(),
                    points: vec![p.to_vec()],
                    generic_up_to: 0,
                    period: None,
                }),
            });
        }
    }
    Ok(f)
}

fn exchange(q: &Quiver, f: &mut [Rational], i: usize) {
    let mut prod = Rational::one();
    for (j, fj) in f.iter().enumerate() {
        let b = q.entry(i, j).unsigned_abs();
        if b > 0 {
            prod *= num_traits::pow(fj.clone(), b as usize);
        }
    }
    f[i] = (Rational::one() + prod) / &f[i];
}

fn bit_size(c: &Rational) -> u64 {
    c.numer().bits().max(c.denom().bits())
}

/// A lazily extended orbit. Points are computed on demand and cached;
/// a period is recorded as soon as the orbit returns to its start.
#[derive(Debug, Clone)]
pub struct Orbit {
    quiver: Quiver,
    points: Vec<Point>,
    max_bits: u64,
    period: Option<usize>,
    stop: Option<OrbitError>,
}

impl Orbit {
    pub fn new(q: &Quiver, start: &[Rational], max_bits: u64) -> Result<Self, OrbitError> {
        if !q.is_admissible() {
            return Err(OrbitError::NotAdmissible);
        }
        if start.len() != q.n() {
            return Err(OrbitError::DimensionMismatch {
                expected: q.n(),
                found: start.len(),
            });
        }
        if let Some(i) = start.iter().position(|c| c.is_zero()) {
            return Err(OrbitError::ZeroStartCoordinate { vertex: i + 1 });
        }
        Ok(Orbit {
            quiver: q.clone(),
            points: vec![start.to_vec()],
            max_bits,
            period: None,
            stop: None,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Period, once the orbit has been seen to return to its start.
    pub fn period(&self) -> Option<usize> {
        self.period
    }

    /// Number of points computed so far.
    pub fn computed(&self) -> usize {
        self.points.len()
    }

    /// `P_t`, extending the orbit as needed.
    pub fn point(&mut self, t: usize) -> Result<&Point, OrbitError> {
        if let Some(p) = self.period {
            return Ok(&self.points[t % p]);
        }
        while self.points.len() <= t {
            if let Some(e) = &self.stop {
                return Err(e.clone());
            }
            self.advance();
            if let Some(p) = self.period {
                return Ok(&self.points[t % p]);
            }
        }
        Ok(&self.points[t])
    }

    fn advance(&mut self) {
        let step = self.points.len();
        let last = self.points.last().expect("start point");
        match forward_step(&self.quiver, last, self.max_bits) {
            Err(StepFailure::Zero { vertex }) => {
                self.stop = Some(OrbitError::NonGeneric {
                    step,
                    vertex,
                    partial: Box::new(self.record()),
                });
            }
            Err(StepFailure::TooLarge { bits }) => {
                self.stop = Some(OrbitError::BudgetExceeded {
                    step,
                    bits,
                    limit: self.max_bits,
                });
            }
            Ok(next) => {
                if next == self.points[0] {
                    self.period = Some(step);
                } else {
                    self.points.push(next);
                }
            }
        }
    }

    /// Snapshot of the points computed so far.
    pub fn record(&self) -> OrbitRecord {
        OrbitRecord {
            quiver: self.quiver.clone(),
            points: self.points.clone(),
            generic_up_to: self.points.len() - 1,
            period: self.period,
        }
    }
}

/// Points `P_0..P_steps` of the orbit of `start`.
///
/// A vanishing coordinate stops the iteration with `NonGeneric`, carrying the
/// points computed before it.
pub fn iterate(q: &Quiver, start: &[Rational], steps: usize, max_bits: u64) -> Result<OrbitRecord, OrbitError> {
    let mut orbit = Orbit::new(q, start, max_bits)?;
    let mut points = Vec::with_capacity(steps + 1);
    for t in 0..=steps {
        points.push(orbit.point(t)?.clone());
    }
    Ok(OrbitRecord {
        quiver: q.clone(),
        points,
        generic_up_to: steps,
        period: orbit.period().filter(|&p| p <= steps),
    })
}

/// Smallest `p <= T` with `P_p = P_0`. The step map is injective on generic
/// points, so a return to the start repeats the whole orbit.
pub fn detect_period(r: &OrbitRecord) -> Option<usize> {
    let start = r.points.first()?;
    (1..r.points.len()).find(|&p| &r.points[p] == start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{point, ratio};
    use crate::quiver::catalog::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    const BITS: u64 = 100_000;

    #[test]
    fn a2_orbit_has_five_points() {
        let r = iterate(&linear_a(2), &point(&[1, 1]), 5, BITS).unwrap();
        let expected: Vec<Point> = [[1, 1], [2, 3], [2, 1], [1, 2], [3, 2], [1, 1]]
            .iter()
            .map(|p| point(p))
            .collect();
        assert_eq!(r.points, expected);
        assert_eq!(r.period, Some(5));
        let long = iterate(&linear_a(2), &point(&[1, 1]), 10, BITS).unwrap();
        assert_eq!(detect_period(&long), Some(5));
    }

    #[test]
    fn kronecker_and_double_a3() {
        let r = iterate(&kronecker(2), &point(&[1, 1]), 2, BITS).unwrap();
        assert_eq!(r.points, vec![point(&[1, 1]), point(&[2, 5]), point(&[13, 34])]);
        let r = iterate(&double_a3(), &point(&[1, 1, 1]), 1, BITS).unwrap();
        assert_eq!(r.points[1], point(&[2, 5, 26]));
    }

    #[test]
    fn kronecker_grows_strictly() {
        let r = iterate(&kronecker(2), &point(&[1, 1]), 20, BITS).unwrap();
        assert_eq!(detect_period(&r), None);
        assert_eq!(r.period, None);
        for w in r.points.windows(2) {
            assert!(w[1][0] > w[0][0] && w[1][1] > w[0][1]);
        }
    }

    #[test]
    fn fixed_point_has_period_one() {
        // single vertex: f -> 2/f, fixed by any f with f^2 = 2; none rational,
        // but f -> (1 + 1)/f has the 2-cycle (1, 2); A1 from 1 gives period 2
        let a1 = linear_a(1);
        let r = iterate(&a1, &point(&[1]), 4, BITS).unwrap();
        assert_eq!(r.period, Some(2));
        // a genuine fixed point: record whose points are all equal
        let rec = OrbitRecord {
            quiver: a1,
            points: vec![point(&[3]), point(&[3])],
            generic_up_to: 1,
            period: None,
        };
        assert_eq!(detect_period(&rec), Some(1));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_step(&linear_a(2), &point(&[2, 3])).unwrap(), point(&[1, 1]));
        assert_eq!(inverse_step(&kronecker(2), &point(&[13, 34])).unwrap(), point(&[2, 5]));
    }

    #[test]
    fn non_generic_start_returns_partial_record() {
        // A2 from (-1, 1): f1 <- (1 + 1)/(-1) = -2, f2 <- (1 + (-2))/1 = -1,
        // then f1 <- (1 + (-1))/(-2) = 0 at step 2
        let err = iterate(&linear_a(2), &point(&[-1, 1]), 5, BITS).unwrap_err();
        match err {
            OrbitError::NonGeneric { step, vertex, partial } => {
                assert_eq!((step, vertex), (2, 1));
                assert_eq!(partial.points, vec![point(&[-1, 1]), point(&[-2, -1])]);
                assert_eq!(partial.generic_up_to, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            iterate(&linear_a(2), &point(&[0, 1]), 1, BITS).unwrap_err(),
            OrbitError::ZeroStartCoordinate { vertex: 1 }
        );
    }

    #[test]
    fn bit_budget() {
        let err = iterate(&kronecker(3), &point(&[1, 1]), 50, 64).unwrap_err();
        assert!(matches!(err, OrbitError::BudgetExceeded { limit: 64, .. }));
    }

    #[test]
    fn lazy_orbit_wraps_around_period() {
        let mut o = Orbit::new(&linear_a(2), &point(&[1, 1]), BITS).unwrap();
        assert_eq!(o.point(7).unwrap(), &point(&[2, 1]));
        assert_eq!(o.period(), Some(5));
        assert_eq!(o.computed(), 5);
    }

    fn arb_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..=5).prop_flat_map(|n| {
            prop::collection::vec(0u32..=2, n * (n - 1) / 2).prop_map(move |mults| {
                let mut arrows = Vec::new();
                let mut it = mults.into_iter();
                for i in 1..=n {
                    for j in 1..i {
                        let m = it.next().unwrap();
                        if m > 0 {
                            arrows.push((i, j, m));
                        }
                    }
                }
                Quiver::from_arrows(n, &arrows).unwrap()
            })
        })
    }

    fn arb_positive_point() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((1i64..=20, 1i64..=9), 5)
            .prop_map(|v| v.into_iter().map(|(n, d)| ratio(n, d)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn inverse_undoes_forward(q in arb_quiver(), p in arb_positive_point()) {
            let p = &p[..q.n()];
            let next = forward_step(&q, p, u64::MAX).unwrap();
            prop_assert_eq!(inverse_step(&q, &next).unwrap(), p.to_vec());
        }

        #[test]
        fn positive_starts_stay_positive(q in arb_quiver(), p in arb_positive_point()) {
            let mut o = Orbit::new(&q, &p[..q.n()], 20_000).unwrap();
            for t in 0..=6 {
                match o.point(t) {
                    Ok(pt) => prop_assert!(pt.iter().all(|c| c.is_positive())),
                    Err(OrbitError::BudgetExceeded { .. }) => break,
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
            }
        }
    }
}
