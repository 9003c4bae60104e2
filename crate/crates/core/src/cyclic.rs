//! Cyclic resultant sequences `r_m = Res(f, x^m − 1) = ∏ (λ_i^m − 1)`,
//! computed along two independent paths, plus their exponential-sum
//! expansions and the genericity conditions those expansions rely on.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_core::{
    format_rational, integer, parse_rational, powi, sylvester_resultant, ExactMatrix, MonicPoly,
    Poly, Rational,
};

/// Finite window of a sequence `a_start, a_start+1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequence {
    start: i64,
    terms: Vec<Rational>,
}

impl ExactSequence {
    pub fn new(start: i64, terms: Vec<Rational>) -> Result<Self> {
        if start < 1 {
            return Err(Error::Precondition(format!(
                "start index must be positive, got {start}"
            )));
        }
        if terms.is_empty() {
            return Err(Error::Precondition(
                "sequence must have at least one term".into(),
            ));
        }
        Ok(ExactSequence { start, terms })
    }

    /// Terms starting at index 1.
    pub fn from_terms(terms: Vec<Rational>) -> Result<Self> {
        Self::new(1, terms)
    }

    pub fn from_i64(terms: &[i64]) -> Result<Self> {
        Self::from_terms(terms.iter().map(|&t| integer(t)).collect())
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn last(&self) -> i64 {
        self.start + self.terms.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }

    pub fn contains(&self, index: i64) -> bool {
        index >= self.start && index <= self.last()
    }

    pub fn get(&self, index: i64) -> Result<&Rational> {
        if self.contains(index) {
            Ok(&self.terms[(index - self.start) as usize])
        } else {
            Err(Error::IndexOutOfRange {
                index,
                first: self.start,
                last: self.last(),
            })
        }
    }

    pub fn push(&mut self, term: Rational) {
        self.terms.push(term);
    }

    /// Sub-window `first..=last`.
    pub fn slice(&self, first: i64, last: i64) -> Result<Self> {
        self.get(first)?;
        self.get(last)?;
        let lo = (first - self.start) as usize;
        let hi = (last - self.start) as usize;
        Self::new(first, self.terms[lo..=hi].to_vec())
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        (self.start..).zip(self.terms.iter())
    }

    /// Line format: optional `# start_index=k` header, then one term per line.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        if self.start != 1 {
            out.push_str(&format!("# start_index={}\n", self.start));
        }
        for t in &self.terms {
            out.push_str(&format_rational(t));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = SequenceDoc {
            start_index: self.start,
            terms: self.terms.iter().map(format_rational).collect(),
        };
        serde_json::to_string(&doc).expect("sequence document serializes")
    }

    /// Accepts the JSON document, the line format, or inline
    /// comma-separated terms.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            let doc: SequenceDoc = serde_json::from_str(trimmed)
                .map_err(|e| Error::Parse(format!("sequence json: {e}")))?;
            let terms = doc
                .terms
                .iter()
                .map(|t| parse_rational(t))
                .collect::<Result<_>>()?;
            return Self::new(doc.start_index, terms);
        }
        let mut start = 1;
        let mut terms = Vec::new();
        for line in trimmed.lines() {
            let line = line.trim();
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(value) = comment.trim().strip_prefix("start_index=") {
                    start = value
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad start_index header: {line:?}")))?;
                }
                continue;
            }
            for token in line.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                terms.push(parse_rational(token)?);
            }
        }
        if terms.is_empty() {
            return Err(Error::Parse("sequence has no terms".into()));
        }
        Self::new(start, terms)
    }
}

#[derive(Serialize, Deserialize)]
struct SequenceDoc {
    start_index: i64,
    terms: Vec<String>,
}

/// `det(C_f^m − I)` for the companion matrix `C_f`.
pub fn cyclic_resultant(f: &MonicPoly, m: u64) -> Result<Rational> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    f.companion().power_minus_identity(m)?.determinant()
}

/// `Res(f, x^m − 1)` through the Sylvester matrix.
pub fn cyclic_resultant_oracle(f: &MonicPoly, m: u64) -> Result<Rational> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    sylvester_resultant(f.as_poly(), &Poly::cyclic(m as usize))
}

/// `∏ (λ_i^m − 1)` from known roots. Defined for every integer `m` when
/// the roots are nonzero; for `m ≤ 0` it continues the exponential-sum
/// form of the sequence.
pub fn resultant_from_roots(roots: &[Rational], m: i64) -> Result<Rational> {
    roots
        .iter()
        .map(|r| Ok(powi(r, m)? - Rational::one()))
        .product()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CheckMode {
    /// Companion path only.
    #[default]
    Fast,
    /// Every term is also computed by the Sylvester path and compared.
    Dual,
}

/// `r_1, …, r_count`.
pub fn cyclic_sequence(f: &MonicPoly, count: usize, mode: CheckMode) -> Result<ExactSequence> {
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    let c = f.companion();
    let identity = ExactMatrix::identity(f.degree());
    let mut power = identity.clone();
    let mut terms = Vec::with_capacity(count);
    for m in 1..=count as u64 {
        power = power.mul(&c)?;
        let term = power.sub(&identity)?.determinant()?;
        if mode == CheckMode::Dual && cyclic_resultant_oracle(f, m)? != term {
            return Err(Error::PathDisagreement { m });
        }
        terms.push(term);
    }
    ExactSequence::from_terms(terms)
}

/// `Σ c_i μ_i^n` with pairwise distinct nonzero bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialSum {
    pairs: Vec<(Rational, Rational)>,
}

impl ExponentialSum {
    /// Rejects zero or repeated bases.
    pub fn new(pairs: Vec<(Rational, Rational)>) -> Result<Self> {
        let mut seen: HashMap<&Rational, usize> = HashMap::new();
        for (i, (_, base)) in pairs.iter().enumerate() {
            if base.is_zero() {
                return Err(Error::Precondition(
                    "exponential-sum bases must be nonzero".into(),
                ));
            }
            if let Some(j) = seen.insert(base, i) {
                return Err(Error::Precondition(format!("bases {j} and {i} coincide")));
            }
        }
        Ok(ExponentialSum { pairs })
    }

    pub fn pairs(&self) -> &[(Rational, Rational)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn eval(&self, n: i64) -> Rational {
        self.pairs
            .iter()
            .map(|(c, mu)| c * powi(mu, n).expect("bases are nonzero"))
            .sum()
    }

    pub fn sequence(&self, start: i64, count: usize) -> Result<ExactSequence> {
        ExactSequence::new(
            start,
            (start..start + count as i64)
                .map(|n| self.eval(n))
                .collect(),
        )
    }
}

fn subset_indices(mask: usize, d: usize) -> Vec<usize> {
    (0..d)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

fn subset_products(roots: &[Rational]) -> Vec<Rational> {
    let d = roots.len();
    (0..1usize << d)
        .map(|mask| {
            (0..d)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| roots[i].clone())
                .product()
        })
        .collect()
}

fn known_roots(f: &MonicPoly) -> Result<&[Rational]> {
    f.roots()
        .ok_or_else(|| Error::Precondition("known roots are required".into()))
}

/// `r_n = Σ_S (−1)^{d−|S|} λ_S^n` over all subsets S of the roots.
pub fn subset_expansion(f: &MonicPoly) -> Result<ExponentialSum> {
    let roots = known_roots(f)?;
    let d = roots.len();
    let products = subset_products(roots);
    let mut seen = HashMap::new();
    let mut pairs = Vec::with_capacity(products.len());
    for (mask, base) in products.into_iter().enumerate() {
        if base.is_zero() {
            return Err(Error::NonGeneric("zero root".into()));
        }
        if seen.insert(base.clone(), mask).is_some() {
            return Err(Error::NonGeneric("coinciding subset products".into()));
        }
        let size = mask.count_ones() as usize;
        let sign = if (d - size).is_multiple_of(2) { 1 } else { -1 };
        pairs.push((integer(sign), base));
    }
    ExponentialSum::new(pairs)
}

/// Ordered pairs of disjoint subsets `(S, T)` of `0..h`, as assignment
/// vectors: 0 = in neither, 1 = in S, 2 = in T.
fn disjoint_pairs(h: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = 3usize.pow(h as u32);
    (0..total).map(move |mut code| {
        (0..h)
            .map(|_| {
                let digit = (code % 3) as u8;
                code /= 3;
                digit
            })
            .collect()
    })
}

fn quotient(half_roots: &[Rational], assignment: &[u8]) -> Rational {
    let mut q = Rational::one();
    for (r, &a) in half_roots.iter().zip(assignment) {
        match a {
            1 => q *= r,
            2 => q /= r,
            _ => {}
        }
    }
    q
}

/// Expansion for a reciprocal polynomial with roots `λ_i^{±1}`:
/// `r_n = Σ_{S∩T=∅} 2^{h−|S∪T|} (−1)^{|S∪T|} (λ_S/λ_T)^n`, `h = d/2`.
pub fn reciprocal_expansion(half_roots: &[Rational]) -> Result<ExponentialSum> {
    if half_roots.is_empty() {
        return Err(Error::Precondition("at least one root required".into()));
    }
    if half_roots.iter().any(Zero::is_zero) {
        return Err(Error::Precondition("roots must be nonzero".into()));
    }
    let h = half_roots.len();
    let mut seen = HashMap::new();
    let mut pairs = Vec::new();
    for assignment in disjoint_pairs(h) {
        let union = assignment.iter().filter(|&&a| a != 0).count();
        let base = quotient(half_roots, &assignment);
        if seen.insert(base.clone(), ()).is_some() {
            return Err(Error::NonGeneric("non-generic reciprocal".into()));
        }
        let magnitude = integer(1i64 << (h - union));
        let coeff = if union % 2 == 0 {
            magnitude
        } else {
            -magnitude
        };
        pairs.push((coeff, base));
    }
    ExponentialSum::new(pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenericityMode {
    /// Subset products `λ_S` pairwise distinct.
    Plain,
    /// Roots pair up as `λ, 1/λ`; quotients `λ_S/λ_T` over disjoint
    /// `S, T` pairwise distinct.
    Reciprocal,
}

/// Two subset-based values found equal. Indices are 1-based root positions
/// (positions among the paired half-roots in reciprocal mode).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenericityWitness {
    Products {
        first: Vec<usize>,
        second: Vec<usize>,
    },
    Quotients {
        first: (Vec<usize>, Vec<usize>),
        second: (Vec<usize>, Vec<usize>),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub witness: Option<GenericityWitness>,
    /// Some root is a root of unity; for rational roots that means ±1.
    pub root_of_unity: bool,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.witness.is_none() && !self.root_of_unity
    }
}

/// Splits roots into `λ_1..λ_h` such that the multiset is `{λ_i, 1/λ_i}`.
pub fn reciprocal_half_roots(roots: &[Rational]) -> Result<Vec<Rational>> {
    let not_reciprocal = || Error::Precondition("roots do not pair up as λ, 1/λ".into());
    if !roots.len().is_multiple_of(2) || roots.iter().any(Zero::is_zero) {
        return Err(not_reciprocal());
    }
    let mut pool: Vec<Rational> = roots.to_vec();
    let mut half = Vec::new();
    while let Some(r) = pool.pop() {
        let inverse = r.recip();
        let pos = pool
            .iter()
            .position(|x| *x == inverse)
            .ok_or_else(not_reciprocal)?;
        pool.remove(pos);
        half.push(r);
    }
    half.reverse();
    Ok(half)
}

pub fn genericity_check(f: &MonicPoly, mode: GenericityMode) -> Result<GenericityReport> {
    let roots = known_roots(f)?;
    let root_of_unity = roots.iter().any(|r| r.is_one() || *r == -Rational::one());
    let witness = match mode {
        GenericityMode::Plain => {
            let d = roots.len();
            let mut seen: HashMap<Rational, usize> = HashMap::new();
            let mut witness = None;
            for (mask, product) in subset_products(roots).into_iter().enumerate() {
                if let Some(&earlier) = seen.get(&product) {
                    witness = Some(GenericityWitness::Products {
                        first: subset_indices(earlier, d),
                        second: subset_indices(mask, d),
                    });
                    break;
                }
                seen.insert(product, mask);
            }
            witness
        }
        GenericityMode::Reciprocal => {
            let half = reciprocal_half_roots(roots)?;
            let split = |a: &[u8]| {
                let pick = |tag| {
                    (0..a.len())
                        .filter(|&i| a[i] == tag)
                        .map(|i| i + 1)
                        .collect::<Vec<_>>()
                };
                (pick(1), pick(2))
            };
            let mut seen: HashMap<Rational, Vec<u8>> = HashMap::new();
            let mut witness = None;
            for assignment in disjoint_pairs(half.len()) {
                let q = quotient(&half, &assignment);
                if let Some(earlier) = seen.get(&q) {
                    witness = Some(GenericityWitness::Quotients {
                        first: split(earlier),
                        second: split(&assignment),
                    });
                    break;
                }
                seen.insert(q, assignment);
            }
            witness
        }
    };
    Ok(GenericityReport {
        witness,
        root_of_unity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::ratio;

    fn ints(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| integer(v)).collect()
    }

    fn quad() -> MonicPoly {
        MonicPoly::from_roots(&ints(&[2, 3])).unwrap()
    }

    #[test]
    fn cyclic_resultant_examples() {
        let mersenne = MonicPoly::from_i64(&[1, -2]).unwrap();
        assert_eq!(cyclic_resultant(&mersenne, 5).unwrap(), integer(31));
        assert_eq!(
            cyclic_resultant(&MonicPoly::from_i64(&[1, -1]).unwrap(), 7).unwrap(),
            integer(0)
        );
        assert_eq!(cyclic_resultant(&quad(), 2).unwrap(), integer(24));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            cyclic_resultant_oracle(&MonicPoly::from_i64(&[1, -2]).unwrap(), 1).unwrap(),
            integer(1)
        );
        assert_eq!(cyclic_resultant_oracle(&quad(), 1).unwrap(), integer(2));
        let cube_roots = MonicPoly::from_i64(&[1, 1, 1]).unwrap();
        assert_eq!(cyclic_resultant_oracle(&cube_roots, 3).unwrap(), integer(0));
    }

    #[test]
    fn sequence_examples() {
        let mersenne = MonicPoly::from_i64(&[1, -2]).unwrap();
        assert_eq!(
            cyclic_sequence(&mersenne, 4, CheckMode::Dual)
                .unwrap()
                .terms(),
            &ints(&[1, 3, 7, 15])[..]
        );
        assert_eq!(
            cyclic_sequence(&quad(), 5, CheckMode::Dual)
                .unwrap()
                .terms(),
            &ints(&[2, 24, 182, 1200, 7502])[..]
        );
        let one = MonicPoly::from_i64(&[1, -1]).unwrap();
        assert_eq!(
            cyclic_sequence(&one, 3, CheckMode::Fast).unwrap().terms(),
            &ints(&[0, 0, 0])[..]
        );
    }

    #[test]
    fn subset_expansion_examples() {
        let linear = MonicPoly::from_roots(&ints(&[2])).unwrap();
        assert_eq!(
            subset_expansion(&linear).unwrap().pairs(),
            &[(integer(-1), integer(1)), (integer(1), integer(2))]
        );
        let mut pairs = subset_expansion(&quad()).unwrap().pairs().to_vec();
        pairs.sort_by(|a, b| a.1.cmp(&b.1));
        assert_eq!(
            pairs,
            vec![
                (integer(1), integer(1)),
                (integer(-1), integer(2)),
                (integer(-1), integer(3)),
                (integer(1), integer(6)),
            ]
        );
        let double = MonicPoly::from_roots(&ints(&[2, 2])).unwrap();
        assert_eq!(
            subset_expansion(&double),
            Err(Error::NonGeneric("coinciding subset products".into()))
        );
        assert!(subset_expansion(&MonicPoly::from_i64(&[1, -2]).unwrap()).is_err());
    }

    #[test]
    fn reciprocal_expansion_examples() {
        let e = reciprocal_expansion(&ints(&[2])).unwrap();
        assert_eq!(
            e.pairs(),
            &[
                (integer(2), integer(1)),
                (integer(-1), integer(2)),
                (integer(-1), ratio(1, 2)),
            ]
        );
        assert_eq!(e.eval(2), ratio(-9, 4));
        let f = MonicPoly::from_roots(&[integer(2), ratio(1, 2)]).unwrap();
        assert_eq!(cyclic_resultant(&f, 2).unwrap(), ratio(-9, 4));
        assert_eq!(
            reciprocal_expansion(&ints(&[1])),
            Err(Error::NonGeneric("non-generic reciprocal".into()))
        );
    }

    #[test]
    fn expansions_reproduce_sequences() {
        let f = MonicPoly::from_roots(&[integer(2), ratio(-1, 3), integer(5)]).unwrap();
        let e = subset_expansion(&f).unwrap();
        let seq = cyclic_sequence(&f, 20, CheckMode::Fast).unwrap();
        for (n, t) in seq.iter() {
            assert_eq!(&e.eval(n), t);
        }
        let lam = ratio(-3, 2);
        let recip = MonicPoly::from_roots(&[lam.clone(), lam.recip()]).unwrap();
        let e = reciprocal_expansion(&[lam]).unwrap();
        for (n, t) in cyclic_sequence(&recip, 20, CheckMode::Fast).unwrap().iter() {
            assert_eq!(&e.eval(n), t);
        }
    }

    #[test]
    fn genericity_examples() {
        let report = genericity_check(&quad(), GenericityMode::Plain).unwrap();
        assert!(report.is_generic());
        let f = MonicPoly::from_roots(&ints(&[2, 4, 8])).unwrap();
        let report = genericity_check(&f, GenericityMode::Plain).unwrap();
        assert_eq!(
            report.witness,
            Some(GenericityWitness::Products {
                first: vec![1, 2],
                second: vec![3]
            })
        );
        let f = MonicPoly::from_roots(&ints(&[-1, 2])).unwrap();
        let report = genericity_check(&f, GenericityMode::Plain).unwrap();
        assert!(report.root_of_unity);
        assert!(!report.is_generic());
    }

    #[test]
    fn reciprocal_genericity() {
        let f = MonicPoly::from_roots(&[integer(2), ratio(1, 2), integer(3), ratio(1, 3)]).unwrap();
        assert!(genericity_check(&f, GenericityMode::Reciprocal)
            .unwrap()
            .is_generic());
        // 4/2 = 2: λ_{1}/λ_∅ against λ_{2}/λ_{1} with half roots 2, 4
        let f = MonicPoly::from_roots(&[integer(2), ratio(1, 2), integer(4), ratio(1, 4)]).unwrap();
        assert!(genericity_check(&f, GenericityMode::Reciprocal)
            .unwrap()
            .witness
            .is_some());
        let f = MonicPoly::from_roots(&ints(&[2, 3])).unwrap();
        assert!(genericity_check(&f, GenericityMode::Reciprocal).is_err());
    }

    #[test]
    fn laurent_continuation() {
        let roots = [integer(2), integer(3)];
        assert_eq!(resultant_from_roots(&roots, 0).unwrap(), integer(0));
        assert_eq!(resultant_from_roots(&roots, -1).unwrap(), ratio(1, 3));
    }

    #[test]
    fn sequence_formats_round_trip() {
        let seq = ExactSequence::new(3, vec![integer(5), ratio(-7, 2)]).unwrap();
        assert_eq!(ExactSequence::parse(&seq.to_lines()).unwrap(), seq);
        assert_eq!(ExactSequence::parse(&seq.to_json()).unwrap(), seq);
        assert_eq!(
            ExactSequence::parse("2, 24").unwrap(),
            ExactSequence::from_i64(&[2, 24]).unwrap()
        );
        assert!(ExactSequence::parse("# start_index=2\n").is_err());
        assert!(ExactSequence::parse("1,x").is_err());
    }

    #[test]
    fn sequence_indexing() {
        let seq = ExactSequence::from_i64(&[1, 2, 3]).unwrap();
        assert_eq!(seq.get(3).unwrap(), &integer(3));
        assert_eq!(
            seq.get(4),
            Err(Error::IndexOutOfRange {
                index: 4,
                first: 1,
                last: 3
            })
        );
        assert!(ExactSequence::new(0, ints(&[1])).is_err());
    }
}
