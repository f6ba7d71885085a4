//! Exact Fourier-Motzkin elimination for strict linear inequality systems.
//!
//! Each derived inequality carries the nonnegative combination of original
//! inequalities that produced it, so an infeasible system yields a checkable
//! contradiction certificate.

use crate::rational::Rational;
use num::{Signed, Zero};

/// `coeffs . x + constant > 0` with a provenance trail over the original
/// system: the inequality equals `sum multiplier_i * original_i`.
#[derive(Debug, Clone)]
struct TrackedIneq {
    coeffs: Vec<Rational>,
    constant: Rational,
    provenance: Vec<(usize, Rational)>,
}

impl TrackedIneq {
    fn combine(a: &TrackedIneq, wa: &Rational, b: &TrackedIneq, wb: &Rational) -> TrackedIneq {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x * wa + y * wb)
            .collect();
        let constant = &a.constant * wa + &b.constant * wb;
        let mut provenance = a
            .provenance
            .iter()
            .map(|(i, m)| (*i, m * wa))
            .collect::<Vec<_>>();
        for (i, m) in &b.provenance {
            match provenance.iter_mut().find(|(j, _)| j == i) {
                Some((_, acc)) => *acc += m * wb,
                None => provenance.push((*i, m * wb)),
            }
        }
        provenance.sort_by_key(|(i, _)| *i);
        TrackedIneq { coeffs, constant, provenance }
    }
}

#[derive(Debug, Clone)]
pub enum FmOutcome {
    /// A strictly feasible rational point, in variable order.
    Feasible(Vec<Rational>),
    /// A nonnegative combination of the original strict inequalities that
    /// collapses to `constant > 0` with `constant <= 0`.
    Infeasible {
        combination: Vec<(usize, Rational)>,
        constant: Rational,
    },
}

/// Decides strict feasibility of `coeffs_i . x + constant_i > 0` for all i.
pub fn fourier_motzkin(inequalities: &[(Vec<Rational>, Rational)]) -> FmOutcome {
    let nvars = inequalities.first().map_or(0, |(c, _)| c.len());
    let mut system: Vec<TrackedIneq> = Vec::new();
    for (idx, (coeffs, constant)) in inequalities.iter().enumerate() {
        let ineq = TrackedIneq {
            coeffs: coeffs.clone(),
            constant: constant.clone(),
            provenance: vec![(idx, Rational::from_integer(1.into()))],
        };
        // duplicates add nothing but pair blowup
        if !system
            .iter()
            .any(|s| s.coeffs == ineq.coeffs && s.constant == ineq.constant)
        {
            system.push(ineq);
        }
    }

    // eliminate variables left to right, keeping each stage for the
    // back-substitution
    let mut stages: Vec<Vec<TrackedIneq>> = vec![system];
    for var in 0..nvars {
        let current = stages.last().unwrap();
        let mut next: Vec<TrackedIneq> = Vec::new();
        let push_unique = |next: &mut Vec<TrackedIneq>, ineq: TrackedIneq| {
            if !next
                .iter()
                .any(|s| s.coeffs == ineq.coeffs && s.constant == ineq.constant)
            {
                next.push(ineq);
            }
        };
        let pos: Vec<&TrackedIneq> = current.iter().filter(|i| i.coeffs[var].is_positive()).collect();
        let neg: Vec<&TrackedIneq> = current.iter().filter(|i| i.coeffs[var].is_negative()).collect();
        for ineq in current.iter().filter(|i| i.coeffs[var].is_zero()) {
            push_unique(&mut next, ineq.clone());
        }
        for p in &pos {
            for n in &neg {
                let wp = p.coeffs[var].recip();
                let wn = -n.coeffs[var].recip();
                let combined = TrackedIneq::combine(p, &wp, n, &wn);
                debug_assert!(combined.coeffs[var].is_zero());
                push_unique(&mut next, combined);
            }
        }
        stages.push(next);
    }

    // the fully eliminated stage is a list of constants that must be positive
    for ineq in stages.last().unwrap() {
        if !ineq.constant.is_positive() {
            return FmOutcome::Infeasible {
                combination: ineq.provenance.clone(),
                constant: ineq.constant.clone(),
            };
        }
    }

    // back-substitute, last eliminated variable first
    let mut assignment = vec![Rational::zero(); nvars];
    for var in (0..nvars).rev() {
        let stage = &stages[var];
        let mut lower: Option<Rational> = None; // x > lower
        let mut upper: Option<Rational> = None; // x < upper
        for ineq in stage {
            let a = &ineq.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let mut rest = ineq.constant.clone();
            for (j, c) in ineq.coeffs.iter().enumerate() {
                if j != var && !c.is_zero() {
                    rest += c * &assignment[j];
                }
            }
            let bound = -rest / a;
            if a.is_positive() {
                lower = Some(match lower {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                upper = Some(match upper {
                    Some(u) if u <= bound => u,
                    _ => bound,
                });
            }
        }
        assignment[var] = match (lower, upper) {
            (Some(l), Some(u)) => {
                debug_assert!(l < u, "feasible system must leave an open interval");
                (&l + &u) / Rational::from_integer(2.into())
            }
            (Some(l), None) => l + Rational::from_integer(1.into()),
            (None, Some(u)) => u - Rational::from_integer(1.into()),
            (None, None) => Rational::zero(),
        };
    }
    FmOutcome::Feasible(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational_from_i64 as q;

    #[test]
    fn feasible_box() {
        // x > 1, -x + 3 > 0, y - x > 0
        let sys = vec![
            (vec![q(1), q(0)], q(-1)),
            (vec![q(-1), q(0)], q(3)),
            (vec![q(-1), q(1)], q(0)),
        ];
        match fourier_motzkin(&sys) {
            FmOutcome::Feasible(x) => {
                for (coeffs, c) in &sys {
                    let mut acc = c.clone();
                    for (ci, xi) in coeffs.iter().zip(&x) {
                        acc += ci * xi;
                    }
                    assert!(acc > q(0));
                }
            }
            FmOutcome::Infeasible { .. } => panic!("system is feasible"),
        }
    }

    #[test]
    fn infeasible_with_certificate() {
        // x > 0, -x > 0
        let sys = vec![(vec![q(1)], q(0)), (vec![q(-1)], q(0))];
        match fourier_motzkin(&sys) {
            FmOutcome::Feasible(_) => panic!("system is infeasible"),
            FmOutcome::Infeasible { combination, constant } => {
                assert!(constant <= q(0));
                // the combination really collapses to that constant
                let mut coeff = q(0);
                let mut cst = q(0);
                for (idx, m) in &combination {
                    assert!(*m >= q(0));
                    coeff += m * &sys[*idx].0[0];
                    cst += m * &sys[*idx].1;
                }
                assert_eq!(coeff, q(0));
                assert_eq!(cst, constant);
            }
        }
    }

    #[test]
    fn unbounded_direction_gets_a_point() {
        // y > 5 with x unconstrained
        let sys = vec![(vec![q(0), q(1)], q(-5))];
        match fourier_motzkin(&sys) {
            FmOutcome::Feasible(x) => assert!(x[1] > q(5)),
            _ => panic!(),
        }
    }
}
