//! Sparse Laurent polynomials with exact rational coefficients.
//!
//! Terms are kept in ascending graded reverse-lexicographic order, with no
//! stored zero coefficients, so equal polynomials have identical
//! representations and serialization is reproducible byte for byte.

use crate::rational::Rational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("variable index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("matrix shape {rows}x{cols} does not match polynomial dimension {dim}")]
    ShapeMismatch { rows: usize, cols: usize, dim: usize },
    #[error("evaluation point must have strictly positive coordinates")]
    NonpositivePoint,
    #[error("exponent arithmetic overflow")]
    ExponentOverflow,
    #[error("exponent vector has length {0}, expected {1}")]
    BadExponentLength(usize, usize),
}

/// Integer exponent vector of a Laurent monomial. Entries may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn total_degree(&self) -> i128 {
        self.0.iter().map(|&e| e as i128).sum()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.len() != other.len() {
            return Err(PolyError::DimensionMismatch(self.len(), other.len()));
        }
        let mut out = Vec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(*b).ok_or(PolyError::ExponentOverflow)?);
        }
        Ok(ExponentVector(out))
    }

    /// Exact dot product with a rational weight vector.
    pub fn weight(&self, w: &[Rational]) -> Rational {
        debug_assert_eq!(self.len(), w.len());
        let mut acc = Rational::zero();
        for (e, wi) in self.0.iter().zip(w) {
            if *e != 0 {
                acc += wi * Rational::from_integer((*e).into());
            }
        }
        acc
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

// The intrinsic order is plain lexicographic (for ordered sets and maps);
// term storage uses the explicit `grevlex_cmp` instead.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

/// Graded reverse-lexicographic comparison, ascending convention:
/// lower total degree first; on ties the exponent whose rightmost differing
/// entry is larger comes first.
pub fn grevlex_cmp(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.len()).rev() {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Equal => continue,
            Ordering::Greater => return Ordering::Less,
            Ordering::Less => return Ordering::Greater,
        }
    }
    Ordering::Equal
}

/// Plain lexicographic comparison, used for deterministic point orderings.
pub fn lex_cmp(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.0.cmp(&b.0)
}

/// Sparse Laurent polynomial over exact rationals.
///
/// The zero polynomial still carries an ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    dim: usize,
    terms: Vec<(ExponentVector, Rational)>,
}

impl SparsePoly {
    pub fn zero(dim: usize) -> Self {
        SparsePoly { dim, terms: Vec::new() }
    }

    pub fn one(dim: usize) -> Self {
        SparsePoly::monomial(ExponentVector::zeros(dim), Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        SparsePoly::monomial(ExponentVector::zeros(dim), c)
    }

    pub fn monomial(exp: ExponentVector, coef: Rational) -> Self {
        let dim = exp.len();
        if coef.is_zero() {
            return SparsePoly::zero(dim);
        }
        SparsePoly { dim, terms: vec![(exp, coef)] }
    }

    /// Builds a polynomial from arbitrary (exponent, coefficient) pairs,
    /// accumulating duplicates and dropping cancelled terms.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (ExponentVector, Rational)>,
    ) -> Result<Self, PolyError> {
        let mut collected: Vec<(ExponentVector, Rational)> = Vec::new();
        for (e, c) in terms {
            if e.len() != dim {
                return Err(PolyError::BadExponentLength(e.len(), dim));
            }
            collected.push((e, c));
        }
        collected.sort_by(|x, y| grevlex_cmp(&x.0, &y.0));
        let mut out: Vec<(ExponentVector, Rational)> = Vec::with_capacity(collected.len());
        for (e, c) in collected {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
            if let Some((_, lc)) = out.last() {
                if lc.is_zero() {
                    out.pop();
                }
            }
        }
        Ok(SparsePoly { dim, terms: out })
    }

    /// Sum of monomials `t^a` over a set of exponent vectors, all with
    /// coefficient one. This is the multiplier shape used by every
    /// certificate search.
    pub fn support_sum(dim: usize, exps: impl IntoIterator<Item = ExponentVector>) -> Result<Self, PolyError> {
        SparsePoly::from_terms(dim, exps.into_iter().map(|e| (e, Rational::one())))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.entries().iter().all(|&e| e == 0) && self.terms[0].1.is_one()
    }

    /// Terms in canonical (ascending grevlex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter().map(|(e, c)| (e, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.iter().map(|(e, _)| e)
    }

    pub fn coefficient(&self, exp: &ExponentVector) -> Option<&Rational> {
        self.terms
            .binary_search_by(|(e, _)| grevlex_cmp(e, exp))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// Total degree of the highest term, if nonzero.
    pub fn total_degree(&self) -> Option<i128> {
        self.terms.last().map(|(e, _)| e.total_degree())
    }

    /// Returns the common total degree if every term has the same one.
    pub fn homogeneous_degree(&self) -> Option<i128> {
        let first = self.terms.first()?.0.total_degree();
        self.terms
            .iter()
            .all(|(e, _)| e.total_degree() == first)
            .then_some(first)
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.dim != other.dim {
            return Err(PolyError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match grevlex_cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(SparsePoly { dim: self.dim, terms: out })
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return SparsePoly::zero(self.dim);
        }
        SparsePoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Exact product via a k-way merge over the smaller factor's term streams.
    /// Each stream `e_g + terms(f)` is already in canonical order, so the
    /// output is born sorted and cancelled terms are dropped as they appear.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.dim != other.dim {
            return Err(PolyError::DimensionMismatch(self.dim, other.dim));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(SparsePoly::zero(self.dim));
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };

        struct Entry {
            exp: ExponentVector,
            stream: usize,
        }
        impl PartialEq for Entry {
            fn eq(&self, o: &Self) -> bool {
                self.cmp(o) == Ordering::Equal
            }
        }
        impl Eq for Entry {}
        impl PartialOrd for Entry {
            fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
                Some(self.cmp(o))
            }
        }
        impl Ord for Entry {
            fn cmp(&self, o: &Self) -> Ordering {
                // reversed: BinaryHeap is a max-heap, we need the minimum
                grevlex_cmp(&o.exp, &self.exp).then_with(|| o.stream.cmp(&self.stream))
            }
        }

        let mut heap: BinaryHeap<Entry> = BinaryHeap::with_capacity(small.terms.len());
        let mut positions = vec![0usize; small.terms.len()];
        for (s, (es, _)) in small.terms.iter().enumerate() {
            heap.push(Entry { exp: es.checked_add(&big.terms[0].0)?, stream: s });
        }

        let mut out: Vec<(ExponentVector, Rational)> = Vec::with_capacity(big.terms.len());
        while let Some(top) = heap.pop() {
            let Entry { exp, stream } = top;
            let pos = positions[stream];
            let coef = &small.terms[stream].1 * &big.terms[pos].1;
            match out.last_mut() {
                Some((le, lc)) if *le == exp => {
                    *lc += coef;
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !coef.is_zero() {
                        out.push((exp, coef));
                    }
                }
            }
            let next = pos + 1;
            if next < big.terms.len() {
                positions[stream] = next;
                heap.push(Entry {
                    exp: small.terms[stream].0.checked_add(&big.terms[next].0)?,
                    stream,
                });
            }
        }
        Ok(SparsePoly { dim: self.dim, terms: out })
    }

    /// `self^n` by binary exponentiation. Used by certificate verification as
    /// a multiplication route independent of the incremental power stream.
    pub fn pow(&self, n: usize) -> Result<Self, PolyError> {
        let mut acc = SparsePoly::one(self.dim);
        let mut base = self.clone();
        let mut k = n;
        loop {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k == 0 {
                return Ok(acc);
            }
            base = base.mul(&base)?;
        }
    }

    /// Keeps exactly the terms whose exponent lies in `s`.
    pub fn truncate(&self, s: &HashSet<ExponentVector>) -> Self {
        self.truncate_where(|e| s.contains(e))
    }

    pub fn truncate_where(&self, mut keep: impl FnMut(&ExponentVector) -> bool) -> Self {
        SparsePoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .cloned()
                .collect(),
        }
    }

    /// Terms minimizing `w . a` over the support (inner-normal convention).
    pub fn initial_form(&self, w: &[Rational]) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if w.len() != self.dim {
            return Err(PolyError::DimensionMismatch(w.len(), self.dim));
        }
        let mut min: Option<Rational> = None;
        for (e, _) in &self.terms {
            let val = e.weight(w);
            match &min {
                Some(m) if *m <= val => {}
                _ => min = Some(val),
            }
        }
        let min = min.unwrap();
        Ok(self.truncate_where(|e| e.weight(w) == min))
    }

    /// Applies `a -> M a + shift` to every exponent; colliding images
    /// accumulate. `M` has one row per output variable.
    pub fn substitute_monomial_map(&self, m: &[Vec<i64>], shift: &ExponentVector) -> Result<Self, PolyError> {
        let rows = m.len();
        if shift.len() != rows {
            return Err(PolyError::BadExponentLength(shift.len(), rows));
        }
        for row in m {
            if row.len() != self.dim {
                return Err(PolyError::ShapeMismatch { rows, cols: row.len(), dim: self.dim });
            }
        }
        let mapped = self.terms.iter().map(|(e, c)| {
            let mut img = Vec::with_capacity(rows);
            for (row, s) in m.iter().zip(shift.entries()) {
                let mut acc: i128 = *s as i128;
                for (mij, aj) in row.iter().zip(e.entries()) {
                    acc += (*mij as i128) * (*aj as i128);
                }
                img.push(i64::try_from(acc).map_err(|_| PolyError::ExponentOverflow)?);
            }
            Ok((ExponentVector::new(img), c.clone()))
        });
        let mapped: Result<Vec<_>, PolyError> = mapped.collect();
        SparsePoly::from_terms(rows, mapped?)
    }

    /// Sets `t_i = 1` (1-based index): deletes coordinate `i` from every
    /// exponent vector, merging collisions.
    pub fn dehomogenize(&self, i: usize) -> Result<Self, PolyError> {
        if i == 0 || i > self.dim {
            return Err(PolyError::IndexOutOfRange(i, self.dim));
        }
        let idx = i - 1;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut v = Vec::with_capacity(self.dim - 1);
            for (j, &ej) in e.entries().iter().enumerate() {
                if j != idx {
                    v.push(ej);
                }
            }
            (ExponentVector::new(v), c.clone())
        });
        SparsePoly::from_terms(self.dim - 1, terms.collect::<Vec<_>>())
    }

    /// Exact evaluation at a strictly positive rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.dim {
            return Err(PolyError::DimensionMismatch(point.len(), self.dim));
        }
        if !point.iter().all(|x| x.is_positive()) {
            return Err(PolyError::NonpositivePoint);
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e.entries()) {
                if k != 0 {
                    let k32 = i32::try_from(k).map_err(|_| PolyError::ExponentOverflow)?;
                    term *= x.pow(k32);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Sign report over the stored coefficients, optionally against a
    /// required support on which every point must carry a strictly positive
    /// coefficient. Offenders list negative terms and, when a required
    /// support is given, its missing or nonpositive points (missing points
    /// are reported with coefficient zero).
    pub fn coefficient_report(&self, required_support: Option<&HashSet<ExponentVector>>) -> CoefficientReport {
        let mut offending: Vec<(ExponentVector, Rational)> = Vec::new();
        for (e, c) in &self.terms {
            if c.is_negative() {
                offending.push((e.clone(), c.clone()));
            }
        }
        let all_nonnegative = offending.is_empty();
        let all_positive_on_required = required_support.map(|req| {
            let mut ok = true;
            for p in req {
                match self.coefficient(p) {
                    Some(c) if c.is_positive() => {}
                    Some(c) => {
                        ok = false;
                        if !c.is_negative() {
                            offending.push((p.clone(), c.clone()));
                        }
                    }
                    None => {
                        ok = false;
                        offending.push((p.clone(), Rational::zero()));
                    }
                }
            }
            ok && all_nonnegative
        });
        offending.sort_by(|x, y| grevlex_cmp(&x.0, &y.0));
        offending.dedup();
        CoefficientReport { all_nonnegative, all_positive_on_required, offending }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientReport {
    pub all_nonnegative: bool,
    /// `None` when no required support was supplied.
    pub all_positive_on_required: Option<bool>,
    pub offending: Vec<(ExponentVector, Rational)>,
}

/// Incremental power stream: yields `g^0 f, g^1 f, ..., g^n f`, one exact
/// multiplication per step.
pub fn power_multiply(
    f: &SparsePoly,
    g: &SparsePoly,
    n: usize,
) -> Result<PowerStream, PolyError> {
    if f.dim() != g.dim() {
        return Err(PolyError::DimensionMismatch(f.dim(), g.dim()));
    }
    Ok(PowerStream {
        current: Some(f.clone()),
        g: g.clone(),
        remaining: n,
        pending_err: None,
    })
}

pub struct PowerStream {
    current: Option<SparsePoly>,
    g: SparsePoly,
    remaining: usize,
    pending_err: Option<PolyError>,
}

impl Iterator for PowerStream {
    type Item = Result<SparsePoly, PolyError>;

    fn next(&mut self) -> Option<Self::Item> {
        if let Some(e) = self.pending_err.take() {
            return Some(Err(e));
        }
        let cur = self.current.take()?;
        if self.remaining > 0 {
            self.remaining -= 1;
            match cur.mul(&self.g) {
                Ok(next) => self.current = Some(next),
                Err(e) => self.pending_err = Some(e),
            }
        }
        Some(Ok(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_rational, rational_from_i64 as q};

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn poly(dim: usize, terms: &[(&[i64], i64)]) -> SparsePoly {
        SparsePoly::from_terms(dim, terms.iter().map(|(e, c)| (ev(e), q(*c)))).unwrap()
    }

    #[test]
    fn grevlex_matches_expected_order() {
        // degree first, then reverse-lex tie break
        let a = ev(&[0, 1, 1]);
        let b = ev(&[1, 0, 1]);
        let c = ev(&[1, 1, 0]);
        assert_eq!(grevlex_cmp(&a, &b), Ordering::Less);
        assert_eq!(grevlex_cmp(&b, &c), Ordering::Less);
        assert_eq!(grevlex_cmp(&ev(&[2, 0, 0]), &ev(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn mul_identity_and_cancellation() {
        let f = poly(1, &[(&[0], 1), (&[1], 1)]);
        let one = SparsePoly::one(1);
        assert_eq!(f.mul(&one).unwrap(), f);
        let g = poly(1, &[(&[0], 1), (&[1], -1)]);
        let expected = poly(1, &[(&[0], 1), (&[2], -1)]);
        assert_eq!(f.mul(&g).unwrap(), expected);
    }

    #[test]
    fn mul_matches_quadratic_oracle() {
        // brute-force pairwise accumulation, independent of the merge path
        fn oracle(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
            let mut acc: Vec<(ExponentVector, Rational)> = Vec::new();
            for (ef, cf) in f.terms() {
                for (eg, cg) in g.terms() {
                    acc.push((ef.checked_add(eg).unwrap(), cf * cg));
                }
            }
            SparsePoly::from_terms(f.dim(), acc).unwrap()
        }
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut mk = |n: usize| {
                let terms: Vec<_> = (0..n)
                    .map(|_| {
                        let e = ev(&[rng.gen_range(-3..4), rng.gen_range(-3..4), rng.gen_range(0..4)]);
                        (e, q(rng.gen_range(-5..6)))
                    })
                    .collect();
                SparsePoly::from_terms(3, terms).unwrap()
            };
            let f = mk(5);
            let g = mk(5);
            assert_eq!(f.mul(&g).unwrap(), oracle(&f, &g));
        }
    }

    #[test]
    fn power_multiply_hand_expansion() {
        let f = poly(1, &[(&[0], 1), (&[1], -1)]);
        let g = poly(1, &[(&[0], 1), (&[1], 1)]);
        let steps: Vec<_> = power_multiply(&f, &g, 2)
            .unwrap()
            .map(|r| r.unwrap())
            .collect();
        assert_eq!(steps.len(), 3);
        assert_eq!(steps[0], f);
        assert_eq!(steps[1], poly(1, &[(&[0], 1), (&[2], -1)]));
        assert_eq!(steps[2], poly(1, &[(&[0], 1), (&[1], 1), (&[2], -1), (&[3], -1)]));
    }

    #[test]
    fn power_multiply_by_one() {
        let f = poly(2, &[(&[1, 0], 2), (&[0, 1], -1)]);
        let one = SparsePoly::one(2);
        let steps: Vec<_> = power_multiply(&f, &one, 3).unwrap().map(|r| r.unwrap()).collect();
        assert_eq!(steps, vec![f.clone(), f.clone(), f.clone(), f]);
    }

    #[test]
    fn truncate_full_and_empty() {
        let f = poly(2, &[(&[0, 0], 1), (&[1, 0], 2)]);
        let full: HashSet<_> = f.support().cloned().collect();
        assert_eq!(f.truncate(&full), f);
        assert_eq!(f.truncate(&HashSet::new()), SparsePoly::zero(2));
    }

    #[test]
    fn initial_form_basics() {
        let f = poly(1, &[(&[0], 1), (&[1], 1), (&[2], 1)]);
        assert_eq!(f.initial_form(&[q(0)]).unwrap(), f);
        assert_eq!(f.initial_form(&[q(1)]).unwrap(), poly(1, &[(&[0], 1)]));
        assert_eq!(f.initial_form(&[q(-1)]).unwrap(), poly(1, &[(&[2], 1)]));
        assert!(SparsePoly::zero(1).initial_form(&[q(1)]).is_err());
    }

    #[test]
    fn initial_forms_multiplicative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let mut mk = || {
                let terms: Vec<_> = (0..4)
                    .map(|_| (ev(&[rng.gen_range(-2..3), rng.gen_range(-2..3)]), q(rng.gen_range(1..5))))
                    .collect();
                SparsePoly::from_terms(2, terms).unwrap()
            };
            let f = mk();
            let g = mk();
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let w = [q(rng.gen_range(-3..4)), q(rng.gen_range(-3..4))];
            let lhs = f.mul(&g).unwrap().initial_form(&w).unwrap();
            let rhs = f.initial_form(&w).unwrap().mul(&g.initial_form(&w).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn substitute_identity() {
        let f = poly(2, &[(&[1, 0], 1), (&[0, 2], 3)]);
        let m = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(f.substitute_monomial_map(&m, &ev(&[0, 0])).unwrap(), f);
    }

    #[test]
    fn dehomogenize_merges() {
        // t1 t4 + t4^2 with t4 = 1 -> t1 + 1
        let f = poly(4, &[(&[1, 0, 0, 1], 1), (&[0, 0, 0, 2], 1)]);
        let d = f.dehomogenize(4).unwrap();
        assert_eq!(d, poly(3, &[(&[0, 0, 0], 1), (&[1, 0, 0], 1)]));
        assert!(f.dehomogenize(5).is_err());
        assert!(f.dehomogenize(0).is_err());
    }

    #[test]
    fn evaluate_exactly() {
        let one = SparsePoly::one(2);
        let p = [q(7), parse_rational("1/3").unwrap()];
        assert_eq!(one.evaluate(&p).unwrap(), q(1));
        let f = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(f.evaluate(&[q(1), q(1)]).unwrap(), q(0));
        assert!(f.evaluate(&[q(1), q(0)]).is_err());
        // Laurent exponent
        let g = poly(1, &[(&[-2], 1)]);
        assert_eq!(g.evaluate(&[q(2)]).unwrap(), parse_rational("1/4").unwrap());
    }

    #[test]
    fn coefficient_report_flags_offenders() {
        let f = poly(2, &[(&[0, 0], 2), (&[1, 0], -3)]);
        let rep = f.coefficient_report(None);
        assert!(!rep.all_nonnegative);
        assert_eq!(rep.offending, vec![(ev(&[1, 0]), q(-3))]);

        let g = poly(2, &[(&[0, 0], 2), (&[1, 0], 3)]);
        let req: HashSet<_> = [ev(&[0, 0]), ev(&[1, 0])].into_iter().collect();
        let rep = g.coefficient_report(Some(&req));
        assert!(rep.all_nonnegative);
        assert_eq!(rep.all_positive_on_required, Some(true));
        assert!(rep.offending.is_empty());

        let req2: HashSet<_> = [ev(&[0, 0]), ev(&[0, 1])].into_iter().collect();
        let rep = g.coefficient_report(Some(&req2));
        assert_eq!(rep.all_positive_on_required, Some(false));
        assert_eq!(rep.offending, vec![(ev(&[0, 1]), q(0))]);
    }

    #[test]
    fn truncate_partition_property() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let terms: Vec<_> = (0..6)
                .map(|_| (ev(&[rng.gen_range(-2..3), rng.gen_range(-2..3)]), q(rng.gen_range(-4..5))))
                .collect();
            let f = SparsePoly::from_terms(2, terms).unwrap();
            let supp: Vec<_> = f.support().cloned().collect();
            let half: HashSet<_> = supp.iter().take(supp.len() / 2).cloned().collect();
            let rest: HashSet<_> = supp.iter().skip(supp.len() / 2).cloned().collect();
            let sum = f.truncate(&half).add(&f.truncate(&rest)).unwrap();
            assert_eq!(sum, f);
        }
    }

    #[test]
    fn evaluate_is_multiplicative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let mut mk = || {
                let terms: Vec<_> = (0..4)
                    .map(|_| (ev(&[rng.gen_range(-2..3), rng.gen_range(0..3)]), q(rng.gen_range(-4..5))))
                    .collect();
                SparsePoly::from_terms(2, terms).unwrap()
            };
            let f = mk();
            let g = mk();
            let p = [
                Rational::new(rng.gen_range(1..10).into(), rng.gen_range(1..10).into()),
                Rational::new(rng.gen_range(1..10).into(), rng.gen_range(1..10).into()),
            ];
            let lhs = f.mul(&g).unwrap().evaluate(&p).unwrap();
            let rhs = f.evaluate(&p).unwrap() * g.evaluate(&p).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
