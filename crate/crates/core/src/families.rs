//! The named invariant families.
//!
//! Copy indices are zero-based in the API and one-based in labels.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{usage, Result};
use crate::field::Fe;
use crate::groups::{full_transfer, is_invariant, GroupKind, GroupTable};
use crate::poly::{Monomial, Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `N_i = x_i y_i`
    N,
    /// `U_ij = x_i y_j + x_j y_i`
    U,
    /// `B_alpha = x^alpha + y^alpha` with `|alpha| = q - 1`
    B,
    /// `d_{I,J} = x_I y_J + y_I x_J`
    D,
    /// `L_i = x_i + y_i`
    L,
    /// `B_alpha` with `alpha` a nonzero 0/1 vector
    BPrime,
    /// `x y^q + x^q y`
    E,
    /// the full transfer of `x^2` over O2-
    Q,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::N => "N",
            Family::U => "U",
            Family::B => "B",
            Family::D => "D",
            Family::L => "L",
            Family::BPrime => "Bprime",
            Family::E => "E",
            Family::Q => "Q",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub family: Family,
    pub poly: Polynomial,
    pub degree: usize,
}

/// A tagged list of invariants for one group.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    ring: Ring,
    kind: GroupKind,
    items: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(ring: Ring, kind: GroupKind) -> GeneratorSet {
        GeneratorSet {
            ring,
            kind,
            items: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn items(&self) -> &[Generator] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Appends a homogeneous nonzero polynomial.
    pub fn push(&mut self, label: impl Into<String>, family: Family, poly: Polynomial) -> Result<()> {
        self.ring.check(&poly)?;
        let label = label.into();
        let degree = poly
            .homogeneous_degree()
            .ok_or_else(|| usage(format!("generator {label} is zero or not homogeneous")))?;
        self.items.push(Generator {
            label,
            family,
            poly,
            degree,
        });
        Ok(())
    }

    pub fn of_family(&self, family: Family) -> impl Iterator<Item = &Generator> + '_ {
        self.items.iter().filter(move |g| g.family == family)
    }

    /// The subset whose families are listed, keeping order.
    pub fn restrict(&self, families: &[Family]) -> GeneratorSet {
        self.filter(|g| families.contains(&g.family))
    }

    pub fn filter(&self, mut keep: impl FnMut(&Generator) -> bool) -> GeneratorSet {
        GeneratorSet {
            ring: self.ring.clone(),
            kind: self.kind,
            items: self.items.iter().filter(|g| keep(g)).cloned().collect(),
        }
    }

    /// First occurrence of every distinct polynomial.
    pub fn distinct(&self) -> GeneratorSet {
        let mut seen: Vec<&Polynomial> = Vec::new();
        let mut items = Vec::new();
        for g in &self.items {
            if !seen.contains(&&g.poly) {
                seen.push(&g.poly);
                items.push(g.clone());
            }
        }
        GeneratorSet {
            ring: self.ring.clone(),
            kind: self.kind,
            items,
        }
    }

    /// The families claimed to form a minimal generating set, deduplicated:
    /// N, B, D for plus; L, N, U and the `B'` elements with `|alpha| >= 3`
    /// for the Sylow subgroup; everything for minus.
    pub fn minimal(&self) -> GeneratorSet {
        match self.kind {
            GroupKind::Plus => self.restrict(&[Family::N, Family::B, Family::D]).distinct(),
            GroupKind::Sylow => self
                .filter(|g| match g.family {
                    Family::L | Family::N | Family::U => true,
                    Family::BPrime => g.degree >= 3,
                    _ => false,
                })
                .distinct(),
            GroupKind::Minus => self.distinct(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.items.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    /// Labels of the items not fixed by `table`.
    pub fn non_invariant(&self, table: &GroupTable) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for g in &self.items {
            if !is_invariant(&self.ring, table, &g.poly)? {
                bad.push(g.label.clone());
            }
        }
        Ok(bad)
    }
}

fn check_copy(ring: &Ring, i: usize) -> Result<()> {
    if i >= ring.m() {
        return Err(usage(format!("copy index {} exceeds m = {}", i + 1, ring.m())));
    }
    Ok(())
}

pub fn n(ring: &Ring, i: usize) -> Result<Polynomial> {
    check_copy(ring, i)?;
    ring.mul(&ring.x(i), &ring.y(i))
}

pub fn u(ring: &Ring, i: usize, j: usize) -> Result<Polynomial> {
    check_copy(ring, i)?;
    check_copy(ring, j)?;
    let mut p = ring.mul(&ring.x(i), &ring.y(j))?;
    p.add_assign(&ring.mul(&ring.x(j), &ring.y(i))?);
    Ok(p)
}

pub fn l(ring: &Ring, i: usize) -> Result<Polynomial> {
    check_copy(ring, i)?;
    ring.add(&ring.x(i), &ring.y(i))
}

/// `x^alpha + y^alpha`.
pub fn b_alpha(ring: &Ring, alpha: &[u16]) -> Result<Polynomial> {
    let zero = vec![0u16; ring.m()];
    let mut p = Polynomial::from_monomial(ring.xy_monomial(alpha, &zero)?);
    p.add_term(ring.xy_monomial(&zero, alpha)?, Fe::ONE);
    Ok(p)
}

/// `B_k = x1^k x2^{q-1-k} + y1^k y2^{q-1-k}` for `m = 2`.
pub fn b_k(ring: &Ring, k: usize) -> Result<Polynomial> {
    let q1 = ring.field().q() as usize - 1;
    if ring.m() != 2 || k > q1 {
        return Err(usage(format!("B_{k} needs m = 2 and k <= q - 1")));
    }
    b_alpha(ring, &[k as u16, (q1 - k) as u16])
}

/// `x_I^alpha y_J^beta + y_I^alpha x_J^beta`, with `alpha` listing the
/// exponents on the indices of `I` in order and `beta` those on `J`.
pub fn d_general(ring: &Ring, i_set: &[usize], j_set: &[usize], alpha: &[u16], beta: &[u16]) -> Result<Polynomial> {
    if i_set.is_empty() || j_set.is_empty() {
        return Err(usage("I and J must be nonempty"));
    }
    if alpha.len() != i_set.len() || beta.len() != j_set.len() {
        return Err(usage("exponent lists must match the index sets"));
    }
    if alpha.iter().chain(beta).any(|&e| e == 0) {
        return Err(usage("exponents on I and J must be positive"));
    }
    let m = ring.m();
    let mut xa = vec![0u16; m];
    let mut xb = vec![0u16; m];
    for (&i, &e) in i_set.iter().zip(alpha) {
        check_copy(ring, i)?;
        if xa[i] != 0 {
            return Err(usage("repeated index in I"));
        }
        xa[i] = e;
    }
    for (&j, &e) in j_set.iter().zip(beta) {
        check_copy(ring, j)?;
        if xb[j] != 0 {
            return Err(usage("repeated index in J"));
        }
        xb[j] = e;
    }
    let mut p = Polynomial::from_monomial(ring.xy_monomial(&xa, &xb)?);
    p.add_term(ring.xy_monomial(&xb, &xa)?, Fe::ONE);
    Ok(p)
}

/// `d_{I,J}` with all exponents one.
pub fn d_sets(ring: &Ring, i_set: &[usize], j_set: &[usize]) -> Result<Polynomial> {
    d_general(ring, i_set, j_set, &vec![1; i_set.len()], &vec![1; j_set.len()])
}

/// All `alpha` in N^m with `|alpha| = total`, ascending lexicographically.
pub fn compositions(m: usize, total: usize) -> Vec<Vec<u16>> {
    fn rec(m: usize, total: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if prefix.len() + 1 == m {
            prefix.push(total as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=total {
            prefix.push(e as u16);
            rec(m, total - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(m, total, &mut Vec::new(), &mut out);
    }
    out
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).collect()
}

fn set_label(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| format!("{}", i + 1)).collect();
    format!("{{{}}}", parts.join(","))
}

fn exps_label(prefix: &str, alpha: &[u16]) -> String {
    let parts: Vec<String> = alpha.iter().map(|e| format!("{e}")).collect();
    format!("{prefix}({})", parts.join(","))
}

/// Pairs `(I, J)` of nonempty index sets with `max(I) < min(J)` and
/// `|J| - |I|` equal to 0 or `q - 1`.
pub fn d_index_pairs(m: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for i_mask in 1u32..(1 << m) {
        let top = 31 - i_mask.leading_zeros();
        let above: u32 = ((1u32 << m) - 1) & !((1u32 << (top + 1)) - 1);
        // nonempty submasks of `above`
        let mut j_mask = above;
        while j_mask != 0 {
            let di = i_mask.count_ones() as usize;
            let dj = j_mask.count_ones() as usize;
            if dj == di || dj == di + q - 1 {
                out.push((mask_indices(i_mask), mask_indices(j_mask)));
            }
            j_mask = (j_mask - 1) & above;
        }
    }
    out.sort();
    out
}

/// N, U, B and D for O2+.
pub fn plus_generators(ring: &Ring) -> Result<GeneratorSet> {
    let m = ring.m();
    let q = ring.field().q() as usize;
    let mut set = GeneratorSet::new(ring.clone(), GroupKind::Plus);
    for i in 0..m {
        set.push(format!("N({})", i + 1), Family::N, n(ring, i)?)?;
    }
    for i in 0..m {
        for j in i + 1..m {
            set.push(format!("U({},{})", i + 1, j + 1), Family::U, u(ring, i, j)?)?;
        }
    }
    for alpha in compositions(m, q - 1) {
        set.push(exps_label("B", &alpha), Family::B, b_alpha(ring, &alpha)?)?;
    }
    for (i_set, j_set) in d_index_pairs(m, q) {
        let label = format!("D({},{})", set_label(&i_set), set_label(&j_set));
        set.push(label, Family::D, d_sets(ring, &i_set, &j_set)?)?;
    }
    Ok(set)
}

/// L, N, U and B' for the Sylow subgroup `{1, sigma}`.
pub fn sylow_generators(ring: &Ring) -> Result<GeneratorSet> {
    let m = ring.m();
    let mut set = GeneratorSet::new(ring.clone(), GroupKind::Sylow);
    for i in 0..m {
        set.push(format!("L({})", i + 1), Family::L, l(ring, i)?)?;
    }
    for i in 0..m {
        set.push(format!("N({})", i + 1), Family::N, n(ring, i)?)?;
    }
    for i in 0..m {
        for j in i + 1..m {
            set.push(format!("U({},{})", i + 1, j + 1), Family::U, u(ring, i, j)?)?;
        }
    }
    let mut alphas: Vec<Vec<u16>> = (1u32..(1 << m))
        .map(|mask| (0..m).map(|i| (mask >> i & 1) as u16).collect())
        .collect();
    alphas.sort_by_key(|a| (a.iter().sum::<u16>(), a.iter().rev().cloned().collect::<Vec<_>>()));
    for alpha in alphas {
        set.push(exps_label("B'", &alpha), Family::BPrime, b_alpha(ring, &alpha)?)?;
    }
    Ok(set)
}

/// The coefficients of `x^2`, `xy` and `y^2` in a quadratic form in one copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticCoefficients {
    pub x2: Fe,
    pub u: Fe,
    pub v: Fe,
}

pub fn quadratic_coefficients(ring: &Ring, p: &Polynomial) -> Result<QuadraticCoefficients> {
    if ring.m() != 1 {
        return Err(usage("quadratic coefficients are read off for m = 1"));
    }
    let c = |a: u16, b: u16| p.coefficient(&Monomial::from_exponents(&[a, b]).expect("two variables"));
    Ok(QuadraticCoefficients {
        x2: c(2, 0),
        u: c(1, 1),
        v: c(0, 2),
    })
}

/// `E = x y^q + x^q y`.
pub fn e_poly(ring: &Ring) -> Result<Polynomial> {
    if ring.m() != 1 {
        return Err(usage(format!("E is defined for m = 1, got m = {}", ring.m())));
    }
    let q = ring.field().q() as u16;
    let mut e = Polynomial::from_monomial(Monomial::from_exponents(&[1, q])?);
    e.add_term(Monomial::from_exponents(&[q, 1])?, Fe::ONE);
    Ok(e)
}

/// `Q = sum_{g in O2-} g . x^2`.
pub fn q_poly(ring: &Ring, table: &GroupTable) -> Result<Polynomial> {
    if ring.m() != 1 {
        return Err(usage(format!("Q is defined for m = 1, got m = {}", ring.m())));
    }
    full_transfer(ring, table, &ring.pow(&ring.x(0), 2)?)
}

/// E and Q for O2-, m = 1. `Q` is pushed only when it is nonzero; the
/// returned value always carries it.
pub fn minus_generators(ring: &Ring, table: &GroupTable) -> Result<(GeneratorSet, Polynomial)> {
    if table.kind() != GroupKind::Minus {
        return Err(usage("the E, Q pair belongs to the minus-type group"));
    }
    let e = e_poly(ring)?;
    let q = q_poly(ring, table)?;
    let mut set = GeneratorSet::new(ring.clone(), GroupKind::Minus);
    set.push("E", Family::E, e)?;
    if !q.is_zero() {
        set.push("Q", Family::Q, q.clone())?;
    }
    Ok((set, q))
}
