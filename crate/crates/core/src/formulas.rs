//! Closed-form counting expressions, evaluated in exact arbitrary-precision
//! arithmetic. Each evaluator returns the value together with a term
//! breakdown that sums back to it, so tables can show where a number came
//! from and tests can cross-check enumeration term by term.

use crate::error::Error;
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)`, with `k > n` giving 0.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

// Signed-index variant: any negative or oversized index is an empty choice.
fn b(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        BigUint::zero()
    } else {
        binomial(n as u64, k as u64)
    }
}

/// An exact value plus the named terms it decomposes into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaValue {
    pub value: BigUint,
    pub terms: Vec<(String, BigUint)>,
}

impl FormulaValue {
    fn from_terms(terms: Vec<(String, BigUint)>) -> Self {
        let value = terms.iter().map(|(_, v)| v).sum();
        FormulaValue { value, terms }
    }

    pub fn as_u64(&self) -> Option<u64> {
        u64::try_from(&self.value).ok()
    }
}

/// The always-available edge count `extra + Σ_{r<k} C(n, r)`: every complex
/// on `n` vertices has the empty set, all singletons and, more generally, can
/// carry every edge smaller than the uniformity of interest for free.
pub fn trivial_lower_bound(n: usize, k: usize, extra: u64) -> Result<FormulaValue, Error> {
    if k < 2 || n < k {
        return Err(Error::InvalidParameter(
            "trivial_lower_bound needs n >= k >= 2".into(),
        ));
    }
    let mut terms = vec![("extra".to_string(), BigUint::from(extra))];
    for r in 0..k {
        terms.push((format!("C({n},{r})"), binomial(n as u64, r as u64)));
    }
    Ok(FormulaValue::from_terms(terms))
}

/// Number of cliques of order at least `k` in the complex whose maximal
/// edges are one `(t-1)`-center star core:
/// `Σ_{r=1}^{t-1} Σ_{i=1}^{r} C(t-1, r) C(n-t+1, k-i)`.
///
/// Also the clique count a largest matching-free family achieves; `t = 1`
/// gives the empty sum 0.
pub fn matching_clique_formula(n: usize, k: usize, t: usize) -> Result<FormulaValue, Error> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "matching_clique_formula needs k >= 2".into(),
        ));
    }
    if t < 1 {
        return Err(Error::InvalidParameter(
            "matching_clique_formula needs t >= 1".into(),
        ));
    }
    let (n, k, t) = (n as i64, k as i64, t as i64);
    let mut terms = Vec::new();
    for r in 1..t {
        for i in 1..=r {
            let term = b(t - 1, r) * b(n - t + 1, k - i);
            terms.push((
                format!("C({},{r})*C({},{})", t - 1, n - t + 1, k - i),
                term,
            ));
        }
    }
    Ok(FormulaValue::from_terms(terms))
}

/// Cliques of order at least `k` in the star with center size `l` — the same
/// double sum as [`matching_clique_formula`] at `t = l + 1`.
pub fn star_clique_count(n: usize, k: usize, l: usize) -> Result<FormulaValue, Error> {
    if l < 1 || l > n {
        return Err(Error::InvalidParameter(
            "star_clique_count needs 1 <= l <= n".into(),
        ));
    }
    matching_clique_formula(n, k, l + 1)
}

/// Conjectured-extremal edge count for forbidding `t` pairwise disjoint
/// generators: the star clique count plus all edges below the uniformity.
pub fn disjoint_gens_formula(n: usize, k: usize, t: usize) -> Result<FormulaValue, Error> {
    let mut terms = matching_clique_formula(n, k, t)?.terms;
    terms.extend(trivial_lower_bound(n, k, 0)?.terms);
    terms.retain(|(name, _)| name != "extra");
    Ok(FormulaValue::from_terms(terms))
}

/// Leading term `Σ_{r=0}^{t-1} C(t-1, r) C(n, k-1) = 2^{t-1} C(n, k-1)` of
/// the sandwich bounding nearly-trivial patterns. The breakdown keeps the
/// expanded sum; the collapsed power-of-two form is the value itself.
pub fn asymptrivial_leading(n: usize, k: usize, t: usize) -> Result<FormulaValue, Error> {
    if k < 3 {
        return Err(Error::InvalidParameter(
            "asymptrivial_leading needs k >= 3".into(),
        ));
    }
    if t < 2 {
        return Err(Error::InvalidParameter(
            "asymptrivial_leading needs t >= 2".into(),
        ));
    }
    let mut terms = Vec::new();
    for r in 0..t {
        terms.push((
            format!("C({},{r})*C({n},{})", t - 1, k - 1),
            b(t as i64 - 1, r as i64) * b(n as i64, k as i64 - 1),
        ));
    }
    Ok(FormulaValue::from_terms(terms))
}

/// The same sum started at `r = 1` — exactly `C(n, k-1)` less than
/// [`asymptrivial_leading`].
pub fn cliquelin_sum(n: usize, k: usize, t: usize) -> Result<FormulaValue, Error> {
    let mut full = asymptrivial_leading(n, k, t)?;
    let dropped = full.terms.remove(0);
    full.value -= dropped.1;
    Ok(full)
}

/// Fullness target for peeling against a `t`-edge matching:
/// `⌊(t-1)/2⌋`.
pub fn kmv_ell(t: usize) -> Result<u64, Error> {
    if t < 4 {
        return Err(Error::InvalidParameter("kmv_ell needs t >= 4".into()));
    }
    Ok(((t - 1) / 2) as u64)
}

/// Which clique orders a census sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// Orders 1 and up.
    All,
    /// Orders at least the uniformity (2 for graphs).
    GeqK,
}

/// Total number of cliques of the balanced complete `t`-partite graph on `n`
/// vertices, computed from the part sizes via elementary symmetric sums:
/// the number of `s`-cliques is `e_s(part sizes)`.
pub fn zykov_count(n: usize, t: usize, mode: CountMode) -> Result<FormulaValue, Error> {
    if t < 1 {
        return Err(Error::InvalidParameter("zykov_count needs t >= 1".into()));
    }
    let sizes = crate::constructions::turan_part_sizes(n, t);
    // poly[s] = e_s of the sizes processed so far.
    let mut poly: Vec<BigUint> = vec![BigUint::one()];
    for a in sizes {
        let a = BigUint::from(a);
        poly.push(BigUint::zero());
        for s in (1..poly.len()).rev() {
            let add = &poly[s - 1] * &a;
            poly[s] += add;
        }
    }
    let start = match mode {
        CountMode::All => 1,
        CountMode::GeqK => 2,
    };
    let terms = poly
        .into_iter()
        .enumerate()
        .skip(start)
        .filter(|(_, e)| !e.is_zero())
        .map(|(s, e)| (format!("K_{s}"), e))
        .collect();
    Ok(FormulaValue::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 0), v(1));
        assert_eq!(binomial(5, 5), v(1));
        assert_eq!(binomial(4, 7), v(0));
        assert_eq!(binomial(30, 4), v(27_405));
        assert_eq!(b(-1, 0), v(0));
        assert_eq!(b(3, -2), v(0));
    }

    #[test]
    fn terms_sum_to_value() {
        for fv in [
            trivial_lower_bound(6, 3, 7).unwrap(),
            matching_clique_formula(9, 4, 3).unwrap(),
            disjoint_gens_formula(10, 2, 3).unwrap(),
            asymptrivial_leading(20, 3, 3).unwrap(),
            zykov_count(7, 3, CountMode::All).unwrap(),
        ] {
            let total: BigUint = fv.terms.iter().map(|(_, t)| t).sum();
            assert_eq!(total, fv.value);
        }
    }

    #[test]
    fn trivial_bound_examples() {
        assert_eq!(trivial_lower_bound(6, 3, 0).unwrap().value, v(22));
        assert_eq!(trivial_lower_bound(4, 2, 0).unwrap().value, v(5));
        assert_eq!(trivial_lower_bound(5, 2, 4).unwrap().value, v(10));
    }

    #[test]
    fn matching_formula_examples() {
        assert_eq!(matching_clique_formula(9, 2, 1).unwrap().value, v(0));
        assert_eq!(matching_clique_formula(5, 2, 2).unwrap().value, v(4));
        assert_eq!(matching_clique_formula(6, 3, 2).unwrap().value, v(10));
    }

    #[test]
    fn star_count_matches_matching_formula() {
        assert_eq!(star_clique_count(5, 2, 1).unwrap().value, v(4));
        assert_eq!(star_clique_count(6, 3, 1).unwrap().value, v(10));
        for n in 4..12 {
            for k in 2..5 {
                for l in 1..4usize {
                    assert_eq!(
                        star_clique_count(n, k, l).unwrap().value,
                        matching_clique_formula(n, k, l + 1).unwrap().value
                    );
                }
            }
        }
    }

    #[test]
    fn disjoint_gens_examples() {
        assert_eq!(disjoint_gens_formula(6, 3, 2).unwrap().value, v(32));
        assert_eq!(disjoint_gens_formula(10, 2, 3).unwrap().value, v(36));
        // t = 1 degenerates to the sub-uniformity edge count.
        assert_eq!(
            disjoint_gens_formula(8, 3, 1).unwrap().value,
            trivial_lower_bound(8, 3, 0).unwrap().value
        );
    }

    #[test]
    fn asymptrivial_examples() {
        assert_eq!(asymptrivial_leading(20, 3, 3).unwrap().value, v(760));
        for (n, k, t) in [(10, 3, 2), (20, 3, 3), (15, 4, 4)] {
            let full = asymptrivial_leading(n, k, t).unwrap().value;
            let tail = cliquelin_sum(n, k, t).unwrap().value;
            assert_eq!(full - tail, binomial(n as u64, k as u64 - 1));
        }
    }

    #[test]
    fn kmv_ell_examples() {
        assert_eq!(kmv_ell(4).unwrap(), 1);
        assert_eq!(kmv_ell(5).unwrap(), 2);
        assert_eq!(kmv_ell(7).unwrap(), 3);
        assert!(kmv_ell(3).is_err());
    }

    #[test]
    fn zykov_examples() {
        assert_eq!(zykov_count(6, 3, CountMode::All).unwrap().value, v(26));
        assert_eq!(zykov_count(7, 3, CountMode::GeqK).unwrap().value, v(28));
        assert_eq!(zykov_count(7, 3, CountMode::All).unwrap().value, v(35));
        assert_eq!(zykov_count(9, 1, CountMode::GeqK).unwrap().value, v(0));
    }

    #[test]
    fn zykov_matches_enumeration() {
        use crate::cliques::count_cliques;
        use crate::complex::Complex;
        use crate::constructions::turan_graph;
        for (n, t) in [(5, 2), (6, 3), (7, 3), (8, 4)] {
            let g = turan_graph(n, t).unwrap();
            let c = Complex::downward_closure(n, g.edges().iter().copied()).unwrap();
            let census = count_cliques(&c, 2).unwrap();
            assert_eq!(
                zykov_count(n, t, CountMode::All).unwrap().value,
                v(census.total_all)
            );
            assert_eq!(
                zykov_count(n, t, CountMode::GeqK).unwrap().value,
                v(census.total_geq_k)
            );
        }
    }
}
