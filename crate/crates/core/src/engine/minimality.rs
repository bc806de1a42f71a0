use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{multidegree_of, multidegrees, sub_mdeg, sub_multidegrees, total, GradedReport, InvariantRing, NoetherNumber, Status, Verdict};
use crate::error::Result;
use crate::families::GeneratorSet;
use crate::groups::GroupKind;
use crate::linalg::Subspace;

/// Decomposable invariants and minimal-generator counts per multidegree.
#[derive(Clone, Debug, Default)]
pub struct MinimalityData {
    pub decomposables: BTreeMap<Vec<u16>, Arc<Subspace>>,
    /// `dim Inv_mu - dim Dec_mu`.
    pub counts: BTreeMap<Vec<u16>, usize>,
}

impl MinimalityData {
    /// Minimal generators needed in each total degree `0..=cutoff`.
    pub fn counts_by_degree(&self, cutoff: usize) -> Vec<usize> {
        let mut out = alloc::vec![0; cutoff + 1];
        for (mu, &c) in &self.counts {
            out[total(mu)] += c;
        }
        out
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Largest degree with a minimal generator.
    pub fn noether(&self) -> Option<usize> {
        self.counts.iter().filter(|(_, &c)| c > 0).map(|(mu, _)| total(mu)).max()
    }
}

/// `span{ h1 * h2 }` over invariant basis elements with positive
/// multidegrees summing to `mu`.
pub fn decomposables(inv: &mut InvariantRing, mu: &[u16]) -> Result<Subspace> {
    let ring = inv.ring().clone();
    let target = inv.piece(mu).rank();
    let mut dec = Subspace::new(inv.field().clone(), inv.space(mu));
    for nu in sub_multidegrees(mu) {
        let rest = sub_mdeg(mu, &nu).expect("nu <= mu");
        if total(&nu) == 0 || total(&rest) == 0 || nu > rest {
            continue;
        }
        let left = inv.basis(&nu);
        let right = inv.basis(&rest);
        for a in left.iter() {
            for b in right.iter() {
                if dec.rank() == target {
                    return Ok(dec);
                }
                dec.insert_poly(&ring.mul(a, b)?)?;
            }
        }
    }
    Ok(dec)
}

pub(crate) fn minimality_data(inv: &mut InvariantRing, cutoff: usize) -> Result<MinimalityData> {
    let mut data = MinimalityData::default();
    for d in 1..=cutoff {
        for mu in multidegrees(inv.m(), d) {
            let dec = decomposables(inv, &mu)?;
            let count = inv.piece(&mu).rank() - dec.rank();
            data.counts.insert(mu.clone(), count);
            data.decomposables.insert(mu, Arc::new(dec));
        }
    }
    Ok(data)
}

/// The Noether number claimed for the group, when there is one.
pub(crate) fn expected_noether(inv: &InvariantRing) -> Option<usize> {
    match inv.kind() {
        GroupKind::Plus => Some((inv.q() as usize - 1).max(inv.m())),
        _ => None,
    }
}

/// Counts minimal generators degree by degree from the true invariant ring,
/// checks that each generator in `gens.minimal()` is indecomposable and that
/// together they account for every minimal generator, and reads off the
/// Noether number.
pub fn minimality_report(inv: &mut InvariantRing, gens: &GeneratorSet, cutoff: usize) -> Result<(GradedReport, MinimalityData)> {
    let data = minimality_data(inv, cutoff)?;
    let mut report = GradedReport::new(inv.params(cutoff));
    report.record(0).dim_invariants = Some(1);
    report.record(0).dim_decomposables = Some(0);
    report.record(0).minimal_generators = Some(0);
    for d in 1..=cutoff {
        let mut dim_dec = 0;
        for mu in multidegrees(inv.m(), d) {
            dim_dec += data.decomposables[&mu].rank();
        }
        let dim_inv = inv.dim(d);
        let rec = report.record(d);
        rec.dim_invariants = Some(dim_inv);
        rec.dim_decomposables = Some(dim_dec);
        rec.minimal_generators = Some(dim_inv - dim_dec);
    }

    let listed = gens.minimal();
    let mut decomposable = Vec::new();
    let mut beyond: Vec<String> = Vec::new();
    let mut by_mdeg: BTreeMap<Vec<u16>, Vec<&crate::families::Generator>> = BTreeMap::new();
    for g in listed.items() {
        if g.degree > cutoff {
            beyond.push(g.label.clone());
            continue;
        }
        let mu = multidegree_of(&g.poly)?;
        if data.decomposables[&mu].contains(&g.poly)? {
            decomposable.push(g.poly.clone());
        }
        by_mdeg.entry(mu).or_default().push(g);
    }
    let mut indec_detail = format!(
        "{} listed generators checked against the decomposables",
        listed.len() - beyond.len()
    );
    if !beyond.is_empty() {
        indec_detail.push_str(&format!("; beyond the cutoff and not checked: {}", beyond.join(", ")));
    }
    report.verdicts.push(
        Verdict::new(
            "indecomposable",
            "every listed minimal generator lies outside the span of products of lower-degree invariants",
            Status::from_bool(decomposable.is_empty()),
            indec_detail,
        )
        .with_witnesses(decomposable),
    );

    // The listed generators of each multidegree must be independent modulo
    // the decomposables and fill the whole complement.
    let mut mismatched = Vec::new();
    for (mu, &count) in &data.counts {
        let mut ext = (*data.decomposables[mu]).clone();
        let before = ext.rank();
        let mine = by_mdeg.get(mu).map(Vec::as_slice).unwrap_or(&[]);
        for g in mine {
            ext.insert_poly(&g.poly)?;
        }
        if ext.rank() - before != count || mine.len() != count {
            mismatched.push(format!("{mu:?}: {count} needed, {} listed", mine.len()));
        }
    }
    let listed_in_range = listed.len() - beyond.len();
    let count_ok = mismatched.is_empty() && data.total() == listed_in_range;
    let mut count_detail = format!(
        "{} minimal generators in degrees 1..={cutoff}; {} listed",
        data.total(),
        listed_in_range
    );
    if !mismatched.is_empty() {
        count_detail.push_str(&format!("; mismatches at {}", mismatched.join(", ")));
    }
    report.verdicts.push(Verdict::new(
        "minimal-count",
        "the listed generators form a minimal generating set: their number equals the number of minimal generators in each multidegree",
        Status::from_bool(count_ok),
        count_detail,
    ));

    if let Some(value) = data.noether() {
        let expected = expected_noether(inv);
        let exact = cutoff > value;
        report.noether = Some(NoetherNumber {
            value,
            exact,
            cutoff,
            expected,
        });
        let status = match expected {
            Some(e) if exact => Status::from_bool(e == value),
            _ => Status::Reported,
        };
        let detail = match expected {
            Some(e) => format!("largest degree of a minimal generator is {value} (verified up to degree {cutoff}); expected {e}"),
            None => format!("largest degree of a minimal generator is {value} (verified up to degree {cutoff})"),
        };
        report.verdicts.push(Verdict::new(
            "noether-number",
            "the Noether number equals max{q-1, m}",
            status,
            detail,
        ));
    }
    Ok((report, data))
}
