use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::free_module::ModuleSpan;
use super::{GradedReport, InvariantRing, Status, Verdict};
use crate::error::{usage, Result};
use crate::families::{b_k, n, u};
use crate::groups::GroupKind;
use crate::poly::{Polynomial, Ring};

/// `v_n = y1^n x2^n + x1^n y2^n`.
pub fn v_n(ring: &Ring, k: u16) -> Result<Polynomial> {
    let mut p = Polynomial::from_monomial(ring.xy_monomial(&[0, k], &[k, 0])?);
    p.add_term(ring.xy_monomial(&[k, 0], &[0, k])?, crate::field::Fe::ONE);
    Ok(p)
}

/// Exact identities and module memberships for O2+ on two copies:
/// `B_k U = N2 B_{k+1} + N1 B_{k-1}`, the position of `U^{q/2+1}`, the
/// polynomials `v_n`, and the products `B_k B_i`.
pub fn identity_suite(inv: &mut InvariantRing) -> Result<GradedReport> {
    if inv.m() != 2 || inv.kind() != GroupKind::Plus {
        return Err(usage("the identity suite needs the plus-type group on m = 2 copies"));
    }
    let ring = inv.ring().clone();
    let field = inv.field().clone();
    let q = inv.q() as usize;
    let u12 = u(&ring, 0, 1)?;
    let (n1, n2) = (n(&ring, 0)?, n(&ring, 1)?);
    let n1n2 = ring.mul(&n1, &n2)?;
    let module = ModuleSpan::candidate(&ring)?;
    let mut report = GradedReport::new(inv.params(2 * (q + 2)));

    let mut bad = Vec::new();
    for k in 1..=q - 2 {
        let lhs = ring.mul(&b_k(&ring, k)?, &u12)?;
        let mut rhs = ring.mul(&n2, &b_k(&ring, k + 1)?)?;
        rhs.add_assign(&ring.mul(&n1, &b_k(&ring, k - 1)?)?);
        if lhs != rhs {
            bad.push(lhs);
        }
    }
    report.verdicts.push(
        Verdict::new(
            "shift-identity",
            "B_k U(1,2) = N2 B_{k+1} + N1 B_{k-1} for 1 <= k <= q-2",
            Status::from_bool(bad.is_empty()),
            format!("{} values of k checked", q - 2),
        )
        .with_witnesses(bad),
    );

    let e = (q / 2 + 1) as u32;
    let top = ring.pow(&u12, e)?;
    let powers: Vec<(String, Polynomial)> = (0..=q / 2)
        .map(|i| Ok((format!("U(1,2)^{i}"), ring.pow(&u12, i as u32)?)))
        .collect::<Result<_>>()?;
    let over_n = ModuleSpan::new(&ring, &[n1.clone(), n2.clone()], &powers)?;
    let in_n = over_n.contains(&field, &top)?;
    report.verdicts.push(
        Verdict::new(
            "U-power-over-N",
            "U(1,2)^{q/2+1} lies in the sum of F_q[N1, N2] U(1,2)^i for i <= q/2",
            Status::Reported,
            format!("computed membership of U(1,2)^{e}: {in_n}"),
        )
        .with_witnesses(vec![top.clone()]),
    );
    let in_module = module.contains(&field, &top)?;
    report.verdicts.push(
        Verdict::new(
            "U-power-in-module",
            "U(1,2)^{q/2+1} lies in the sum of R f over the candidate module basis",
            Status::from_bool(in_module),
            format!("membership of U(1,2)^{e}: {in_module}"),
        )
        .with_witnesses(if in_module { vec![] } else { vec![top] }),
    );

    let mut v = vec![ring.zero(), u12.clone()];
    let mut rec_bad = Vec::new();
    let mut mem_bad = Vec::new();
    for k in 1..=q + 2 {
        let vk = v_n(&ring, k as u16)?;
        if k >= 2 {
            let mut rhs = ring.mul(&v[k - 1], &u12)?;
            rhs.add_assign(&ring.mul(&n1n2, &v[k - 2])?);
            if rhs != vk {
                rec_bad.push(vk.clone());
            }
            v.push(vk.clone());
        } else if vk != u12 {
            rec_bad.push(vk.clone());
        }
        if !module.contains(&field, &vk)? {
            mem_bad.push(vk);
        }
    }
    report.verdicts.push(
        Verdict::new(
            "v-recursion",
            "v_1 = U(1,2) and v_n = v_{n-1} U(1,2) + N1 N2 v_{n-2}, where v_n = y1^n x2^n + x1^n y2^n and v_0 = 0",
            Status::from_bool(rec_bad.is_empty()),
            format!("checked for 1 <= n <= {}", q + 2),
        )
        .with_witnesses(rec_bad),
    );
    report.verdicts.push(
        Verdict::new(
            "v-in-module",
            "every v_n lies in the sum of R f over the candidate module basis",
            Status::from_bool(mem_bad.is_empty()),
            format!("checked for 1 <= n <= {}", q + 2),
        )
        .with_witnesses(mem_bad),
    );

    let mut prod_bad = Vec::new();
    let mut pairs = 0;
    for k in 1..=q - 2 {
        for i in k..=q - 2 {
            let p = ring.mul(&b_k(&ring, k)?, &b_k(&ring, i)?)?;
            pairs += 1;
            if !module.contains(&field, &p)? {
                prod_bad.push(p);
            }
        }
    }
    report.verdicts.push(
        Verdict::new(
            "B-products-in-module",
            "B_k B_i lies in the sum of R f over the candidate module basis for 1 <= k <= i <= q-2",
            Status::from_bool(prod_bad.is_empty()),
            format!("{pairs} pairs checked"),
        )
        .with_witnesses(prod_bad),
    );
    Ok(report)
}
