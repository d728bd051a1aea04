//! Persistence functions, cornerpoint multiplicities and diagrams.
//!
//! A persistence function is tame: it has finitely many critical values and
//! is constant on the open spans between them. All evaluation at or beyond
//! infinite arguments follows the convention that such values equal the
//! global minimum of the function, which makes the cornerpoint formula work
//! uniformly for points at infinity.

mod components;
mod homology;
mod reduction;

pub use components::component_persistence_function;
pub use homology::homology_persistence_function;
pub(crate) use homology::{span_bases, sublevel_bases, SpanBases};
pub use reduction::{reduce_to_intervals, IntervalModule, IntervalSummand};

use crate::value::{midpoint, rat_int, rat_to_f64, ExtValue, Rat};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PersistenceError {
    #[error("evaluator is not tame for its critical values near ({u}, {v})")]
    TamenessViolation { u: f64, v: f64 },
    #[error("negative multiplicity {mult} at ({u}, {v}); the evaluator violates the persistence inequalities")]
    NegativeMultiplicity { u: String, v: String, mult: i64 },
    #[error("{0} is not right-regular for this function")]
    NotRightRegular(f64),
    #[error("box bounds must satisfy alpha < beta <= gamma < delta")]
    BadBox,
    #[error("cornerpoint birth {birth} must lie strictly below death {death}")]
    BadCornerpoint { birth: String, death: String },
}

type Evaluator = Arc<dyn Fn(&Rat, &Rat) -> i64 + Send + Sync>;

/// Integer-valued function p(u, v) on pairs u <= v with finitely many
/// critical values, constant on the open spans between them.
#[derive(Clone)]
pub struct PersistenceFunction {
    critical: Vec<Rat>,
    probes: Vec<Rat>,
    grid: Vec<i64>,
    min_value: i64,
    eval: Evaluator,
}

impl std::fmt::Debug for PersistenceFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PersistenceFunction")
            .field("critical", &self.critical)
            .field("grid", &self.grid)
            .finish()
    }
}

fn span_index(critical: &[Rat], x: &Rat) -> usize {
    critical.partition_point(|c| c <= x)
}

fn make_probes(critical: &[Rat]) -> Vec<Rat> {
    let m = critical.len();
    if m == 0 {
        return vec![rat_int(0)];
    }
    let mut probes = Vec::with_capacity(m + 1);
    probes.push(&critical[0] - rat_int(1));
    for i in 1..m {
        probes.push(midpoint(&critical[i - 1], &critical[i]));
    }
    probes.push(critical.last().unwrap() + rat_int(1));
    probes
}

impl PersistenceFunction {
    /// Wraps an arbitrary evaluator. The probe grid is filled eagerly, one
    /// evaluation per pair of spans; tameness against the declared critical
    /// values is checked later, by [`PersistenceFunction::diagram`].
    pub fn from_evaluator(
        mut critical: Vec<Rat>,
        eval: impl Fn(&Rat, &Rat) -> i64 + Send + Sync + 'static,
    ) -> PersistenceFunction {
        critical.sort();
        critical.dedup();
        let probes = make_probes(&critical);
        let n = probes.len();
        let mut grid = vec![0i64; n * n];
        let mut min_value = i64::MAX;
        for i in 0..n {
            for j in i..n {
                let v = eval(&probes[i], &probes[j]);
                grid[i * n + j] = v;
                min_value = min_value.min(v);
            }
        }
        PersistenceFunction {
            critical,
            probes,
            grid,
            min_value,
            eval: Arc::new(eval),
        }
    }

    /// Builds the function from explicit span values: `grid` is the
    /// (m+1) x (m+1) row-major table of values on pairs of open spans,
    /// read only at entries i <= j. The evaluator snaps its arguments to
    /// spans, which makes the function right-continuous by construction.
    pub fn from_span_grid(mut critical: Vec<Rat>, grid: Vec<i64>) -> PersistenceFunction {
        critical.sort();
        critical.dedup();
        let n = critical.len() + 1;
        assert_eq!(grid.len(), n * n, "grid shape");
        let probes = make_probes(&critical);
        let min_value = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| grid[i * n + j])
            .min()
            .expect("nonempty grid");
        let crit = critical.clone();
        let table = grid.clone();
        let eval = move |u: &Rat, v: &Rat| -> i64 {
            let i = span_index(&crit, u);
            let j = span_index(&crit, v);
            table[i * n + j]
        };
        PersistenceFunction {
            critical,
            probes,
            grid,
            min_value,
            eval: Arc::new(eval),
        }
    }

    pub fn critical_values(&self) -> &[Rat] {
        &self.critical
    }

    /// Global minimum over the probe grid; by the persistence inequalities
    /// this is the value at (far left, far right).
    pub fn min_value(&self) -> i64 {
        self.min_value
    }

    /// Evaluates at finite arguments. Requires u <= v.
    pub fn evaluate(&self, u: &Rat, v: &Rat) -> i64 {
        assert!(u <= v, "requires u <= v");
        (self.eval)(u, v)
    }

    /// Evaluation extended to infinite arguments: any infinite coordinate
    /// yields the global minimum of the function.
    pub fn evaluate_ext(&self, u: &ExtValue, v: &ExtValue) -> i64 {
        assert!(u <= v, "requires u <= v");
        match (u, v) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => self.evaluate(a, b),
            _ => self.min_value,
        }
    }

    /// Open neighborhood (lo, hi) of x that crosses no critical value other
    /// than possibly x itself.
    fn neighborhood(&self, x: &ExtValue) -> (ExtValue, ExtValue) {
        let m = self.critical.len();
        match x {
            ExtValue::NegInf => (ExtValue::NegInf, ExtValue::Finite(self.probes[0].clone())),
            ExtValue::PosInf => (ExtValue::Finite(self.probes[m].clone()), ExtValue::PosInf),
            ExtValue::Finite(r) => {
                let s = span_index(&self.critical, r);
                let critical_here = s >= 1 && &self.critical[s - 1] == r;
                let lo = if critical_here {
                    self.probes[s - 1].clone()
                } else if s == 0 {
                    r - rat_int(1)
                } else {
                    midpoint(&self.critical[s - 1], r)
                };
                let hi = if critical_here {
                    self.probes[s].clone()
                } else if s == m {
                    r + rat_int(1)
                } else {
                    midpoint(r, &self.critical[s])
                };
                (ExtValue::Finite(lo), ExtValue::Finite(hi))
            }
        }
    }

    /// Cornerpoint multiplicity at (u, v), u < v, as the alternating sum of
    /// the function over disjoint neighborhoods of the two coordinates.
    /// Infinite coordinates follow the global-minimum convention, so points
    /// at infinity come out of the same formula.
    pub fn multiplicity(&self, u: &ExtValue, v: &ExtValue) -> i64 {
        assert!(u < v, "requires u < v");
        let (u_lo, mut u_hi) = self.neighborhood(u);
        let (mut v_lo, v_hi) = self.neighborhood(v);
        if u_hi > v_lo {
            // Shrink to keep the neighborhoods disjoint.
            match (u, v) {
                (ExtValue::Finite(a), ExtValue::Finite(b)) => {
                    let mid = ExtValue::Finite(midpoint(a, b));
                    u_hi = u_hi.min(mid.clone());
                    v_lo = v_lo.max(mid);
                }
                (ExtValue::NegInf, _) => u_hi = v_lo.clone(),
                (_, ExtValue::PosInf) => v_lo = u_hi.clone(),
                _ => unreachable!("u < v"),
            }
        }
        self.evaluate_ext(&u_hi, &v_lo) - self.evaluate_ext(&u_lo, &v_lo)
            - self.evaluate_ext(&u_hi, &v_hi)
            + self.evaluate_ext(&u_lo, &v_hi)
    }

    /// Verifies that the evaluator really is constant on the open spans cut
    /// by the declared critical values, by comparing a second probe per
    /// span against the primary grid.
    fn verify_tame(&self) -> Result<(), PersistenceError> {
        let m = self.critical.len();
        let n = m + 1;
        let second: Vec<Rat> = if m == 0 {
            vec![rat_int(1)]
        } else {
            let mut q = Vec::with_capacity(n);
            q.push(&self.critical[0] - crate::value::rat_frac(1, 2));
            for i in 1..m {
                let lo = &self.critical[i - 1];
                let hi = &self.critical[i];
                q.push(lo + (hi - lo) * crate::value::rat_frac(3, 4));
            }
            q.push(self.critical.last().unwrap() + rat_int(2));
            q
        };
        for i in 0..n {
            for j in i..n {
                let expected = self.grid[i * n + j];
                let shifted = (self.eval)(&second[i], &second[j]);
                let mixed = (self.eval)(&self.probes[i], &second[j]);
                if shifted != expected || mixed != expected {
                    return Err(PersistenceError::TamenessViolation {
                        u: rat_to_f64(&second[i]),
                        v: rat_to_f64(&second[j]),
                    });
                }
            }
        }
        Ok(())
    }

    /// Persistence diagram: every pair of critical values (plus the two
    /// infinities) with positive multiplicity. The diagonal is never
    /// materialized. Errors if the evaluator disagrees with its declared
    /// critical values on the probe grid, or if some multiplicity is
    /// negative.
    pub fn diagram(&self) -> Result<PersistenceDiagram, PersistenceError> {
        self.verify_tame()?;
        let mut births: Vec<ExtValue> = vec![ExtValue::NegInf];
        births.extend(self.critical.iter().cloned().map(ExtValue::Finite));
        let mut deaths: Vec<ExtValue> =
            self.critical.iter().cloned().map(ExtValue::Finite).collect();
        deaths.push(ExtValue::PosInf);
        let mut points = Vec::new();
        for b in &births {
            for d in &deaths {
                if b >= d {
                    continue;
                }
                let mult = self.multiplicity(b, d);
                if mult < 0 {
                    return Err(PersistenceError::NegativeMultiplicity {
                        u: b.to_string(),
                        v: d.to_string(),
                        mult,
                    });
                }
                if mult > 0 {
                    points.push(Cornerpoint {
                        birth: b.clone(),
                        death: d.clone(),
                        color: None,
                        multiplicity: mult as u64,
                    });
                }
            }
        }
        PersistenceDiagram::new(points)
    }

    /// First probe strictly to the right of a, inside the same span.
    fn right_probe(&self, a: &Rat) -> Rat {
        let s = span_index(&self.critical, a);
        if s == self.critical.len() {
            a + rat_int(1)
        } else {
            midpoint(a, &self.critical[s])
        }
    }

    fn check_right_regular(&self, a: &Rat) -> Result<(), PersistenceError> {
        let r = self.right_probe(a);
        let at = self.evaluate(a, a);
        if self.evaluate(a, &r) != at || self.evaluate(&r, &r) != at {
            return Err(PersistenceError::NotRightRegular(rat_to_f64(a)));
        }
        Ok(())
    }

    /// Number of diagram points in the box (alpha, beta] x (gamma, delta],
    /// computed directly from function values as
    /// p(beta, gamma) - p(alpha, gamma) - p(beta, delta) + p(alpha, delta).
    /// All four bounds must be right-regular; delta may be +infinity.
    pub fn check_box_count(
        &self,
        alpha: &Rat,
        beta: &Rat,
        gamma: &Rat,
        delta: &ExtValue,
    ) -> Result<i64, PersistenceError> {
        let ordered = alpha < beta
            && beta <= gamma
            && ExtValue::Finite(gamma.clone()) < *delta;
        if !ordered {
            return Err(PersistenceError::BadBox);
        }
        for a in [alpha, beta, gamma] {
            self.check_right_regular(a)?;
        }
        if let ExtValue::Finite(d) = delta {
            self.check_right_regular(d)?;
        }
        let ext = |x: &Rat, y: &ExtValue| -> i64 {
            self.evaluate_ext(&ExtValue::Finite(x.clone()), y)
        };
        Ok(self.evaluate(beta, gamma) - self.evaluate(alpha, gamma) - ext(beta, delta)
            + ext(alpha, delta))
    }
}

/// Off-diagonal diagram point with multiplicity and an optional color.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cornerpoint {
    pub birth: ExtValue,
    pub death: ExtValue,
    pub color: Option<String>,
    pub multiplicity: u64,
}

/// Finite multiset of cornerpoints. The diagonal is implicit and never
/// stored. Points are kept sorted by (birth, death, color) with merged
/// multiplicities, so equal diagrams compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceDiagram {
    points: Vec<Cornerpoint>,
}

impl PersistenceDiagram {
    pub fn new(mut points: Vec<Cornerpoint>) -> Result<PersistenceDiagram, PersistenceError> {
        for p in &points {
            if p.birth >= p.death {
                return Err(PersistenceError::BadCornerpoint {
                    birth: p.birth.to_string(),
                    death: p.death.to_string(),
                });
            }
        }
        points.retain(|p| p.multiplicity > 0);
        points.sort();
        let mut merged: Vec<Cornerpoint> = Vec::with_capacity(points.len());
        for p in points {
            match merged.last_mut() {
                Some(q) if q.birth == p.birth && q.death == p.death && q.color == p.color => {
                    q.multiplicity += p.multiplicity;
                }
                _ => merged.push(p),
            }
        }
        Ok(PersistenceDiagram { points: merged })
    }

    pub fn empty() -> PersistenceDiagram {
        PersistenceDiagram { points: Vec::new() }
    }

    pub fn points(&self) -> &[Cornerpoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    /// Total multiplicity of points alive at t: birth <= t < death.
    pub fn count_through(&self, t: &Rat) -> u64 {
        let t = ExtValue::Finite(t.clone());
        self.points
            .iter()
            .filter(|p| p.birth <= t && p.death > t)
            .map(|p| p.multiplicity)
            .sum()
    }

    /// Total multiplicity inside the box (alpha, beta] x (gamma, delta].
    pub fn box_count(
        &self,
        alpha: &ExtValue,
        beta: &ExtValue,
        gamma: &ExtValue,
        delta: &ExtValue,
    ) -> u64 {
        self.points
            .iter()
            .filter(|p| {
                &p.birth > alpha && &p.birth <= beta && &p.death > gamma && &p.death <= delta
            })
            .map(|p| p.multiplicity)
            .sum()
    }

    /// Distinct colors present, in sorted order.
    pub fn colors(&self) -> Vec<Option<String>> {
        let mut cs: Vec<Option<String>> = self.points.iter().map(|p| p.color.clone()).collect();
        cs.sort();
        cs.dedup();
        cs
    }

    pub fn filter_color(&self, color: Option<&str>) -> PersistenceDiagram {
        PersistenceDiagram {
            points: self
                .points
                .iter()
                .filter(|p| p.color.as_deref() == color)
                .cloned()
                .collect(),
        }
    }

    /// Same points, all retagged with one color.
    pub fn with_color(&self, color: &str) -> PersistenceDiagram {
        let points = self
            .points
            .iter()
            .map(|p| Cornerpoint {
                color: Some(color.to_string()),
                ..p.clone()
            })
            .collect();
        PersistenceDiagram::new(points).expect("valid points stay valid")
    }

    /// Same points with colors forgotten and equal points merged.
    pub fn forget_colors(&self) -> PersistenceDiagram {
        let points = self
            .points
            .iter()
            .map(|p| Cornerpoint {
                color: None,
                ..p.clone()
            })
            .collect();
        PersistenceDiagram::new(points).expect("valid points stay valid")
    }

    /// Multiset union.
    pub fn merge(&self, other: &PersistenceDiagram) -> PersistenceDiagram {
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        PersistenceDiagram::new(points).expect("valid points stay valid")
    }
}
