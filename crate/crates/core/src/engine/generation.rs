use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{multidegree_of, multidegrees, sub_mdeg, GradedReport, InvariantRing, Status, Verdict};
use crate::error::{Error, Result};
use crate::families::GeneratorSet;
use crate::linalg::Subspace;
use crate::poly::Polynomial;

/// Compares the subalgebra generated by `gens` with the invariant ring in
/// every degree up to `cutoff`.
///
/// The closure is built degree by degree: the piece of multidegree `mu` is
/// spanned by `g * b` for each generator `g` and each closure basis element
/// `b` of multidegree `mu - mdeg(g)`, starting from the constants.
pub fn generation_check(inv: &mut InvariantRing, gens: &GeneratorSet, cutoff: usize) -> Result<GradedReport> {
    let ring = inv.ring().clone();
    let field = inv.field().clone();
    let bad = gens.non_invariant(inv.table())?;
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "not invariant under the {} group: {}",
            inv.kind(),
            bad.join(", ")
        )));
    }
    let mut graded: Vec<(Vec<u16>, &Polynomial)> = Vec::new();
    for g in gens.items() {
        graded.push((multidegree_of(&g.poly)?, &g.poly));
    }

    let mut report = GradedReport::new(inv.params(cutoff));
    report.record(0).dim_invariants = Some(1);
    report.record(0).dim_closure = Some(1);
    let mut closure: BTreeMap<Vec<u16>, Vec<Polynomial>> = BTreeMap::new();
    closure.insert(alloc::vec![0; inv.m()], alloc::vec![ring.one()]);
    let mut witnesses = Vec::new();
    let mut failing = Vec::new();

    for d in 1..=cutoff {
        let (mut dim_inv, mut dim_clo) = (0, 0);
        for mu in multidegrees(inv.m(), d) {
            let piece = inv.piece(&mu);
            let target = piece.rank();
            let mut a = Subspace::new(field.clone(), inv.space(&mu));
            'fill: for (nu, g) in &graded {
                let Some(rest) = sub_mdeg(&mu, nu) else { continue };
                let Some(lower) = closure.get(&rest) else { continue };
                for b in lower {
                    if a.rank() == target {
                        break 'fill;
                    }
                    a.insert_poly(&ring.mul(g, b)?)?;
                }
            }
            dim_inv += target;
            dim_clo += a.rank();
            if a.rank() < target {
                if let Some(w) = piece.basis().into_iter().find(|h| !a.contains(h).unwrap_or(false)) {
                    if witnesses.len() < 8 {
                        witnesses.push(w);
                    }
                }
                if !failing.contains(&d) {
                    failing.push(d);
                }
            }
            closure.insert(mu, a.basis());
        }
        let rec = report.record(d);
        rec.dim_invariants = Some(dim_inv);
        rec.dim_closure = Some(dim_clo);
    }

    let detail = if failing.is_empty() {
        format!("closure and invariant ring agree in all degrees 0..={cutoff}")
    } else {
        format!("closure is smaller than the invariant ring in degrees {failing:?}")
    };
    report.verdicts.push(
        Verdict::new(
            "generation",
            "the listed invariants generate the invariant ring in every degree up to the cutoff",
            Status::from_bool(failing.is_empty()),
            detail,
        )
        .with_witnesses(witnesses),
    );
    Ok(report)
}
