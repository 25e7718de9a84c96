//! Betti numbers of covers: Künneth products, symmetric-power lower bounds
//! and the classification of cover types (e, r) of a hyper-Kähler fourfold.
//!
//! If Y is a rational cover of a projective hyper-Kähler X with transcendental
//! rank t = b2 - rho, the transcendental structure of X and its symmetric
//! powers inject into the cohomology of Y, so b_{2k}(Y) >= C(t + k - 1, k).

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error("rho = {rho} must lie in 0..={b2}")]
    InvalidRho { b2: i64, rho: i64 },
    #[error("b2 = {0} is below 4")]
    InvalidB2(i64),
    #[error("k must be positive")]
    InvalidK,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = BettiError> = std::result::Result<T, E>;

/// b_0, ..., b_{2m}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<u64>);

impl BettiVector {
    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_poincare_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

pub fn k3_betti() -> BettiVector {
    BettiVector(vec![1, 0, 22, 0, 1])
}

/// Convolution of the factors; the point (1) for an empty list.
pub fn kunneth_betti(factors: &[BettiVector]) -> Result<BettiVector> {
    let mut acc = vec![1u64];
    for f in factors {
        let mut out = vec![0u64; acc.len() + f.0.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.0.iter().enumerate() {
                let t = a
                    .checked_mul(*b)
                    .ok_or(BettiError::Overflow("Künneth product"))?;
                out[i + j] = out[i + j]
                    .checked_add(t)
                    .ok_or(BettiError::Overflow("Künneth product"))?;
            }
        }
        acc = out;
    }
    Ok(BettiVector(acc))
}

/// C(n, k) with the convention C(n, k) = 0 for k > n.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc * (n - k + i) is divisible by i
        acc = acc
            .checked_mul(n as u128 - k as u128 + i)
            .ok_or(BettiError::Overflow("binomial"))?
            / i;
    }
    u64::try_from(acc).map_err(|_| BettiError::Overflow("binomial"))
}

/// Betti numbers of a complex g-dimensional torus, b_i = C(2g, i).
pub fn abelian_betti(g: u64) -> Result<BettiVector> {
    let n = g
        .checked_mul(2)
        .ok_or(BettiError::Overflow("abelian Betti numbers"))?;
    (0..=n)
        .map(|i| binomial(n, i))
        .collect::<Result<_>>()
        .map(BettiVector)
}

fn check_rho(b2: i64, rho: i64) -> Result<u64> {
    if rho < 0 || rho > b2 {
        return Err(BettiError::InvalidRho { b2, rho });
    }
    Ok((b2 - rho) as u64)
}

/// C(b2 - rho + k - 1, k): the dimension of Sym^k of the transcendental part.
pub fn betti_lower_bound(b2: i64, rho: i64, k: u64) -> Result<u64> {
    let t = check_rho(b2, rho)?;
    if k == 0 {
        return Err(BettiError::InvalidK);
    }
    if t == 0 {
        return Ok(0);
    }
    let top = t
        .checked_add(k - 1)
        .ok_or(BettiError::Overflow("binomial"))?;
    binomial(top, k)
}

/// Candidate étale cover type: a torus of dimension e times hyper-Kähler
/// factors of dimensions 2 k_i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverCandidate {
    pub e: u64,
    pub ks: Vec<u64>,
    #[serde(serialize_with = "serialize_label")]
    pub label: (u64, u64),
    pub description: &'static str,
}

fn serialize_label<S: Serializer>(
    label: &(u64, u64),
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("({},{})", label.0, label.1))
}

impl CoverCandidate {
    fn new(e: u64, ks: Vec<u64>, description: &'static str) -> Self {
        let label = (e, ks.len() as u64);
        CoverCandidate {
            e,
            ks,
            label,
            description,
        }
    }

    pub fn dimension(&self) -> u64 {
        self.e + 2 * self.ks.iter().sum::<u64>()
    }

    /// Known Betti vector, when every factor is pinned down.
    pub fn betti(&self) -> Option<BettiVector> {
        let mut factors = vec![abelian_betti(self.e).ok()?];
        for &k in &self.ks {
            if k != 1 {
                return None;
            }
            factors.push(k3_betti());
        }
        kunneth_betti(&factors).ok()
    }
}

impl fmt::Display for CoverCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.label.0, self.label.1)
    }
}

/// The four dimension-4 types without strict Calabi-Yau factors.
pub fn dimension_four_candidates() -> Vec<CoverCandidate> {
    vec![
        CoverCandidate::new(4, vec![], "abelian fourfold"),
        CoverCandidate::new(2, vec![1], "abelian surface x K3 surface"),
        CoverCandidate::new(0, vec![2], "hyper-Kähler fourfold"),
        CoverCandidate::new(0, vec![1, 1], "K3 surface x K3 surface"),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// Betti numbers against the symmetric-power bound.
    A,
    /// Transcendental rank against a single K3 factor.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleRecord {
    pub rule: Rule,
    pub quantity: String,
    pub observed: u64,
    pub required: u64,
    pub passed: bool,
    /// Exact comparison, e.g. "70 < 78".
    pub detail: String,
    /// The rule is a reconstruction of an argument left implicit.
    pub reconstructed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateTrace {
    pub candidate: CoverCandidate,
    pub excluded: bool,
    pub records: Vec<RuleRecord>,
    /// Why a rule was skipped.
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub b2: i64,
    pub rho: i64,
    pub transcendental_rank: u64,
    pub feasible: Vec<CoverCandidate>,
    pub trace: Vec<CandidateTrace>,
    /// b2 != 23.
    pub beyond_paper: bool,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn feasible_labels(&self) -> Vec<(u64, u64)> {
        self.feasible.iter().map(|c| c.label).collect()
    }
}

/// Largest transcendental rank of a projective K3 surface: 22 - 1.
pub const K3_MAX_TRANSCENDENTAL_RANK: u64 = 21;

fn at_least(rule: Rule, quantity: &str, observed: u64, required: u64) -> RuleRecord {
    let passed = observed >= required;
    let op = if passed { ">=" } else { "<" };
    RuleRecord {
        rule,
        quantity: quantity.to_string(),
        observed,
        required,
        passed,
        detail: format!("{observed} {op} {required}"),
        reconstructed: false,
    }
}

/// Apply the exclusion rules to the four dimension-4 cover types of a
/// hyper-Kähler fourfold with second Betti number b2 and Picard rank rho.
///
/// Rule 0 is structural: factors that are strict Calabi-Yau manifolds are
/// never candidates, since the pulled-back symplectic form cannot live on
/// them. Rule A needs cover b_2 >= t and b_4 >= C(t + 1, 2), t = b2 - rho,
/// and is skipped for the hyper-Kähler fourfold, whose Betti numbers are not
/// known in advance. Rule B applies to K3 x K3: the cover is then exactly
/// that product, an irreducible Hodge structure injecting into a direct sum
/// injects into a summand, so t <= 21.
pub fn classify_cover_types(b2: i64, rho: i64) -> Result<ClassificationReport> {
    if b2 < 4 {
        return Err(BettiError::InvalidB2(b2));
    }
    let t = check_rho(b2, rho)?;
    let need_b2 = betti_lower_bound(b2, rho, 1)?;
    let need_b4 = betti_lower_bound(b2, rho, 2)?;
    let mut trace = Vec::new();
    let mut feasible = Vec::new();
    for cand in dimension_four_candidates() {
        let mut records = Vec::new();
        let mut skipped = Vec::new();
        match cand.betti() {
            Some(b) => {
                records.push(at_least(Rule::A, "b_2", b.get(2), need_b2));
                records.push(at_least(Rule::A, "b_4", b.get(4), need_b4));
            }
            None => {
                skipped.push("rule A: Betti numbers of the cover are not determined".to_string())
            }
        }
        if cand.ks == [1, 1] {
            let passed = t <= K3_MAX_TRANSCENDENTAL_RANK;
            let op = if passed { "<=" } else { ">" };
            records.push(RuleRecord {
                rule: Rule::B,
                quantity: "transcendental rank".into(),
                observed: t,
                required: K3_MAX_TRANSCENDENTAL_RANK,
                passed,
                detail: format!("{t} {op} {K3_MAX_TRANSCENDENTAL_RANK}"),
                reconstructed: true,
            });
        }
        let excluded = records.iter().any(|r| !r.passed);
        if !excluded {
            feasible.push(cand.clone());
        }
        trace.push(CandidateTrace {
            candidate: cand,
            excluded,
            records,
            skipped,
        });
    }
    let mut notes = vec![
        "rule 0: types with a strict Calabi-Yau factor are excluded before any arithmetic".to_string(),
        "rule B is reconstructed reasoning: irreducible projection onto a single K3 factor of transcendental rank at most 21".to_string(),
    ];
    let beyond_paper = b2 != 23;
    if beyond_paper {
        notes.push(format!(
            "beyond-paper: b2 = {b2}, the rules are applied unchanged outside b2 = 23"
        ));
    }
    Ok(ClassificationReport {
        b2,
        rho,
        transcendental_rank: t,
        feasible,
        trace,
        beyond_paper,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn labels(r: &ClassificationReport) -> BTreeSet<(u64, u64)> {
        r.feasible_labels().into_iter().collect()
    }

    fn failed_details(r: &ClassificationReport) -> Vec<String> {
        r.trace
            .iter()
            .flat_map(|t| t.records.iter())
            .filter(|rec| !rec.passed)
            .map(|rec| rec.detail.clone())
            .collect()
    }

    #[test]
    fn kunneth_examples() {
        let a2 = abelian_betti(2).unwrap();
        assert_eq!(a2.0, vec![1, 4, 6, 4, 1]);
        let prod = kunneth_betti(&[a2.clone(), k3_betti()]).unwrap();
        assert_eq!(prod.get(4), 134);
        assert_eq!(kunneth_betti(&[a2.clone()]).unwrap(), a2);
        let kk = kunneth_betti(&[k3_betti(), k3_betti()]).unwrap();
        assert_eq!((kk.get(2), kk.get(4)), (44, 486));
        assert_eq!(kunneth_betti(&[]).unwrap().0, vec![1]);
    }

    #[test]
    fn abelian_examples() {
        let a4 = abelian_betti(4).unwrap();
        assert_eq!((a4.get(2), a4.get(4)), (28, 70));
        assert_eq!(abelian_betti(0).unwrap().0, vec![1]);
        assert!(a4.is_poincare_symmetric());
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(betti_lower_bound(23, 1, 2), Ok(253));
        assert_eq!(betti_lower_bound(23, 11, 2), Ok(78));
        assert_eq!(betti_lower_bound(23, 23, 3), Ok(0));
        assert_eq!(betti_lower_bound(23, 5, 1), Ok(18));
        assert_eq!(
            betti_lower_bound(23, 24, 1),
            Err(BettiError::InvalidRho { b2: 23, rho: 24 })
        );
        assert_eq!(
            betti_lower_bound(23, -1, 1),
            Err(BettiError::InvalidRho { b2: 23, rho: -1 })
        );
        assert_eq!(betti_lower_bound(23, 1, 0), Err(BettiError::InvalidK));
    }

    #[test]
    fn classification_table() {
        let r = classify_cover_types(23, 11).unwrap();
        assert_eq!(labels(&r), [(2, 1), (0, 2), (0, 1)].into_iter().collect());
        assert_eq!(failed_details(&r), vec!["70 < 78"]);

        let r = classify_cover_types(23, 7).unwrap();
        assert_eq!(labels(&r), [(0, 1), (0, 2)].into_iter().collect());
        assert!(failed_details(&r).contains(&"134 < 136".to_string()));

        let r = classify_cover_types(23, 1).unwrap();
        assert_eq!(labels(&r), [(0, 1)].into_iter().collect());
        assert!(failed_details(&r).contains(&"22 > 21".to_string()));
        assert!(!r.beyond_paper);
    }

    #[test]
    fn threshold_is_sharp() {
        let r = classify_cover_types(23, 12).unwrap();
        assert!(r.feasible_labels().contains(&(4, 0)));
        let a4 = r
            .trace
            .iter()
            .find(|t| t.candidate.label == (4, 0))
            .unwrap();
        assert_eq!(a4.records[1].detail, "70 >= 66");
    }

    #[test]
    fn hk_fourfold_skips_rule_a() {
        let r = classify_cover_types(23, 0).unwrap();
        let hk = r
            .trace
            .iter()
            .find(|t| t.candidate.label == (0, 1))
            .unwrap();
        assert!(hk.records.is_empty() && !hk.excluded);
        assert_eq!(hk.skipped.len(), 1);
    }

    #[test]
    fn classification_errors_and_markers() {
        assert_eq!(classify_cover_types(3, 1), Err(BettiError::InvalidB2(3)));
        assert_eq!(
            classify_cover_types(23, 30),
            Err(BettiError::InvalidRho { b2: 23, rho: 30 })
        );
        let r = classify_cover_types(7, 1).unwrap();
        assert!(r.beyond_paper);
        assert!(r.notes.iter().any(|n| n.starts_with("beyond-paper")));
    }

    #[test]
    fn candidates_have_dimension_four() {
        for c in dimension_four_candidates() {
            assert_eq!(c.dimension(), 4, "{c}");
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 7), Ok(0));
        assert_eq!(binomial(0, 0), Ok(1));
        assert_eq!(binomial(66, 33), Ok(7219428434016265740));
        assert!(binomial(200, 100).is_err());
    }
}
