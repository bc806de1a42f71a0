//! Exact linear algebra over GF(q) on spaces of monomials of one degree or
//! one multidegree.
//!
//! Vectors are bit-sliced: a row over GF(2^s) holds `s` bit planes, plane `k`
//! carrying bit `k` of every coordinate. Adding a multiple `c * v` is then
//! `s^2` word XORs per 64 coordinates.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{usage, Result};
use crate::field::{Fe, FieldContext};
use crate::groups::Action;
use crate::poly::{monomials_of_degree, Monomial, Polynomial};

/// A vector over GF(2^s) of fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedRow {
    planes: u32,
    words: usize,
    data: Vec<u64>,
}

impl PackedRow {
    pub fn zero(planes: u32, len: usize) -> PackedRow {
        let words = len.div_ceil(64);
        PackedRow {
            planes,
            words,
            data: vec![0; planes as usize * words],
        }
    }

    #[inline]
    pub fn get(&self, j: usize) -> Fe {
        let (w, b) = (j / 64, j % 64);
        let mut bits = 0u32;
        for k in 0..self.planes {
            bits |= ((self.data[k as usize * self.words + w] >> b) as u32 & 1) << k;
        }
        Fe::from_bits(bits as u16)
    }

    #[inline]
    pub fn set(&mut self, j: usize, v: Fe) {
        let (w, b) = (j / 64, j % 64);
        let bits = v.bits() as u64;
        for k in 0..self.planes {
            let word = &mut self.data[k as usize * self.words + w];
            *word = (*word & !(1 << b)) | (((bits >> k) & 1) << b);
        }
    }

    /// Adds `v` to coordinate `j`.
    #[inline]
    pub fn add_at(&mut self, j: usize, v: Fe) {
        let (w, b) = (j / 64, j % 64);
        let bits = v.bits() as u64;
        for k in 0..self.planes {
            self.data[k as usize * self.words + w] ^= ((bits >> k) & 1) << b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// First nonzero coordinate at or after `from`.
    pub fn next_nonzero(&self, from: usize) -> Option<usize> {
        let mut w = from / 64;
        if w >= self.words {
            return None;
        }
        let mut mask = !0u64 << (from % 64);
        while w < self.words {
            let mut any = 0;
            for k in 0..self.planes {
                any |= self.data[k as usize * self.words + w];
            }
            any &= mask;
            if any != 0 {
                return Some(w * 64 + any.trailing_zeros() as usize);
            }
            mask = !0;
            w += 1;
        }
        None
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, field: &FieldContext, other: &PackedRow, c: Fe) {
        debug_assert_eq!(self.data.len(), other.data.len());
        if c.is_zero() {
            return;
        }
        let w = self.words;
        let mut z = Fe::ONE;
        let zgen = Fe::from_bits(2);
        for k in 0..self.planes {
            // contribution of plane k of `other` is c * z^k in every set position
            let ck = field.mul(c, z).bits();
            for t in 0..self.planes {
                if ck >> t & 1 == 1 {
                    let (dst, src) = (t as usize * w, k as usize * w);
                    for i in 0..w {
                        self.data[dst + i] ^= other.data[src + i];
                    }
                }
            }
            z = field.mul(z, zgen);
        }
    }

    pub fn scaled(&self, field: &FieldContext, c: Fe) -> PackedRow {
        let mut out = PackedRow::zero(self.planes, 0);
        out.words = self.words;
        out.data = vec![0; self.data.len()];
        out.add_scaled(field, self, c);
        out
    }

    /// Nonzero coordinates in ascending order.
    pub fn support(&self) -> Vec<(usize, Fe)> {
        let mut out = Vec::new();
        let mut j = 0;
        while let Some(i) = self.next_nonzero(j) {
            out.push((i, self.get(i)));
            j = i + 1;
        }
        out
    }
}

/// The ordered monomial basis of one graded or multigraded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSpace {
    nvars: usize,
    multidegree: Option<Vec<u16>>,
    monomials: Vec<Monomial>,
}

impl MonomialSpace {
    /// All monomials of total degree `d`.
    pub fn degree(nvars: usize, d: usize) -> MonomialSpace {
        MonomialSpace {
            nvars,
            multidegree: None,
            monomials: monomials_of_degree(nvars, d),
        }
    }

    /// All monomials `x^alpha y^beta` with `alpha_i + beta_i = mu_i`.
    pub fn multidegree(mu: &[u16]) -> MonomialSpace {
        let m = mu.len();
        let mut monomials = Vec::new();
        let mut beta = vec![0u16; m];
        let mut exps = vec![0u16; 2 * m];
        loop {
            for i in 0..m {
                exps[i] = mu[i] - beta[i];
                exps[m + i] = beta[i];
            }
            monomials.push(Monomial::from_exponents(&exps).expect("bounded exponents"));
            // mixed-radix increment, first copy least significant
            let mut i = 0;
            while i < m && beta[i] == mu[i] {
                beta[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            beta[i] += 1;
        }
        MonomialSpace {
            nvars: 2 * m,
            multidegree: Some(mu.to_vec()),
            monomials,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn multidegree_of(&self) -> Option<&[u16]> {
        self.multidegree.as_deref()
    }

    pub fn index_of(&self, mono: &Monomial) -> Option<usize> {
        if mono.nvars() != self.nvars {
            return None;
        }
        match &self.multidegree {
            Some(mu) => {
                let m = mu.len();
                let mut idx = 0;
                let mut radix = 1;
                for i in 0..m {
                    let (a, b) = (mono.exponent(i), mono.exponent(m + i));
                    if a + b != mu[i] {
                        return None;
                    }
                    idx += b as usize * radix;
                    radix *= mu[i] as usize + 1;
                }
                Some(idx)
            }
            None => self.monomials.binary_search(mono).ok(),
        }
    }

    /// Coordinates of `p`; fails if `p` has a term outside the space.
    pub fn to_row(&self, field: &FieldContext, p: &Polynomial) -> Result<PackedRow> {
        let mut row = PackedRow::zero(field.s(), self.len());
        for (m, c) in p.terms() {
            let j = self
                .index_of(m)
                .ok_or_else(|| usage(format!("term {m} lies outside the coordinate space")))?;
            row.set(j, c);
        }
        Ok(row)
    }

    pub fn to_poly(&self, row: &PackedRow) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        for (j, c) in row.support() {
            p.add_term(self.monomials[j], c);
        }
        p
    }
}

/// A subspace in reduced row-echelon form, pivots strictly increasing.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Arc<FieldContext>,
    space: Arc<MonomialSpace>,
    rows: Vec<PackedRow>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: Arc<FieldContext>, space: Arc<MonomialSpace>) -> Subspace {
        Subspace {
            field,
            space,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn space(&self) -> &Arc<MonomialSpace> {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.space.len()
    }

    pub fn rows(&self) -> &[PackedRow] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` to its normal form modulo the subspace.
    pub fn reduce(&self, v: &mut PackedRow) {
        let mut j = 0;
        while let Some(c) = v.next_nonzero(j) {
            if let Ok(i) = self.pivots.binary_search(&c) {
                let coeff = v.get(c);
                v.add_scaled(&self.field, &self.rows[i], coeff);
            }
            j = c + 1;
        }
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, mut v: PackedRow) -> bool {
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        let Some(p) = v.next_nonzero(0) else {
            return false;
        };
        let inv = self.field.inv(v.get(p)).expect("pivot is nonzero");
        if inv != Fe::ONE {
            v = v.scaled(&self.field, inv);
        }
        for row in &mut self.rows {
            let c = row.get(p);
            if !c.is_zero() {
                row.add_scaled(&self.field, &v, c);
            }
        }
        let at = self.pivots.partition_point(|&x| x < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn insert_poly(&mut self, p: &Polynomial) -> Result<bool> {
        let row = self.space.to_row(&self.field, p)?;
        Ok(self.insert(row))
    }

    pub fn contains_row(&self, v: &PackedRow) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if self.is_full() {
            self.space.to_row(&self.field, p)?;
            return Ok(true);
        }
        Ok(self.contains_row(&self.space.to_row(&self.field, p)?))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains_row(r))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.rank() == other.rank() && self.contains_subspace(other)
    }

    /// The echelon basis as polynomials.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.rows.iter().map(|r| self.space.to_poly(r)).collect()
    }
}

/// The span of `polys` inside `space`.
pub fn span(field: &Arc<FieldContext>, space: &Arc<MonomialSpace>, polys: &[Polynomial]) -> Result<Subspace> {
    let mut s = Subspace::new(field.clone(), space.clone());
    for p in polys {
        s.insert_poly(p)?;
    }
    Ok(s)
}

/// The span of homogeneous polynomials of degree `d` in `nvars` variables.
pub fn span_of_degree(field: &Arc<FieldContext>, nvars: usize, d: usize, polys: &[Polynomial]) -> Result<Subspace> {
    for p in polys {
        if !p.is_zero() && p.homogeneous_degree() != Some(d) {
            return Err(usage(format!("{p} is not homogeneous of degree {d}")));
        }
    }
    span(field, &Arc::new(MonomialSpace::degree(nvars, d)), polys)
}

/// Polynomials fixed by every listed action. Uses orbit propagation when all
/// actions map monomials to scaled monomials and a stacked kernel otherwise.
pub fn fixed_subspace(field: &Arc<FieldContext>, space: &Arc<MonomialSpace>, actions: &[Action]) -> Subspace {
    if actions.iter().all(Action::is_monomial) {
        fixed_subspace_orbits(field, space, actions)
    } else {
        fixed_subspace_dense(field, space, actions)
    }
}

/// Orbit propagation: an invariant has `v[pi(u)] = c * v[u]` whenever the
/// action sends monomial `u` to `c * pi(u)`; each orbit contributes one basis
/// vector unless its constraints force zero.
pub fn fixed_subspace_orbits(field: &Arc<FieldContext>, space: &Arc<MonomialSpace>, actions: &[Action]) -> Subspace {
    let n = space.len();
    let maps: Vec<Vec<(usize, Fe)>> = actions
        .iter()
        .map(|a| {
            space
                .monomials()
                .iter()
                .map(|m| {
                    let (img, c) = a.on_monomial(field, m).expect("monomial action");
                    (space.index_of(&img).expect("actions preserve multidegree"), c)
                })
                .collect()
        })
        .collect();
    let mut value: Vec<Option<Fe>> = vec![None; n];
    let mut out = Subspace::new(field.clone(), space.clone());
    for root in 0..n {
        if value[root].is_some() {
            continue;
        }
        value[root] = Some(Fe::ONE);
        let mut orbit = vec![root];
        let mut consistent = true;
        let mut k = 0;
        while k < orbit.len() {
            let u = orbit[k];
            let vu = value[u].expect("visited");
            for map in &maps {
                let (img, c) = map[u];
                let want = field.mul(c, vu);
                match value[img] {
                    None => {
                        value[img] = Some(want);
                        orbit.push(img);
                    }
                    Some(have) => consistent &= have == want,
                }
            }
            k += 1;
        }
        if consistent {
            let mut row = PackedRow::zero(field.s(), n);
            for &u in &orbit {
                row.set(u, value[u].expect("visited"));
            }
            // supports are disjoint and the root is the orbit minimum
            out.pivots.push(root);
            out.rows.push(row);
        }
    }
    out
}

/// Kernel of the stacked operators `g - 1`.
pub fn fixed_subspace_dense(field: &Arc<FieldContext>, space: &Arc<MonomialSpace>, actions: &[Action]) -> Subspace {
    let n = space.len();
    let nvars = space.nvars();
    let ring_m = nvars / 2;
    let ring = crate::poly::Ring::new(field.clone(), ring_m).expect("valid ring");
    let mut equations = Subspace::new(field.clone(), space.clone());
    for a in actions {
        // row w of (A - 1): coefficient of monomial w in the image of each u
        let mut rows: Vec<PackedRow> = (0..n).map(|_| PackedRow::zero(field.s(), n)).collect();
        for (u, mono) in space.monomials().iter().enumerate() {
            let img = a
                .apply(&ring, &Polynomial::from_monomial(*mono))
                .expect("same ring");
            for (m, c) in img.terms() {
                let w = space.index_of(m).expect("actions preserve multidegree");
                rows[w].add_at(u, c);
            }
            rows[u].add_at(u, Fe::ONE);
        }
        for r in rows {
            if !r.is_zero() {
                equations.insert(r);
            }
        }
    }
    let mut out = Subspace::new(field.clone(), space.clone());
    let mut is_pivot = vec![false; n];
    for &p in &equations.pivots {
        is_pivot[p] = true;
    }
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = PackedRow::zero(field.s(), n);
        v.set(free, Fe::ONE);
        for (row, &p) in equations.rows.iter().zip(&equations.pivots) {
            let c = row.get(free);
            if !c.is_zero() {
                v.set(p, c);
            }
        }
        out.insert(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, GroupKind};
    use crate::poly::Ring;

    fn field(s: u32) -> Arc<FieldContext> {
        Arc::new(FieldContext::new(s).unwrap())
    }

    fn actions(f: &Arc<FieldContext>, gens: &[crate::groups::Matrix2]) -> Vec<Action> {
        gens.iter().map(|g| Action::new(f, g).unwrap()).collect()
    }

    #[test]
    fn packed_row_arithmetic() {
        let f = field(3);
        let mut r = PackedRow::zero(3, 130);
        r.set(0, Fe::from_bits(5));
        r.set(129, Fe::from_bits(3));
        assert_eq!(r.get(129), Fe::from_bits(3));
        assert_eq!(r.next_nonzero(1), Some(129));
        let mut s = PackedRow::zero(3, 130);
        s.add_scaled(&f, &r, Fe::from_bits(6));
        assert_eq!(s.get(0), f.mul(Fe::from_bits(5), Fe::from_bits(6)));
        assert_eq!(s.get(129), f.mul(Fe::from_bits(3), Fe::from_bits(6)));
        s.add_scaled(&f, &r, Fe::from_bits(6));
        assert!(s.is_zero());
    }

    #[test]
    fn span_examples() {
        let f = field(2);
        let r = Ring::new(f.clone(), 1).unwrap();
        let n1 = r.parse("x1*y1").unwrap();
        assert_eq!(span_of_degree(&f, 2, 2, &[n1.clone(), n1.clone()]).unwrap().rank(), 1);
        let all: Vec<Polynomial> = r.monomials_of_degree(4).into_iter().map(Polynomial::from_monomial).collect();
        assert_eq!(span_of_degree(&f, 2, 4, &all).unwrap().rank(), 5);
        assert_eq!(span_of_degree(&f, 2, 4, &[]).unwrap().rank(), 0);
        assert!(span_of_degree(&f, 2, 2, &[r.parse("x1 + y1^2").unwrap()]).is_err());
    }

    #[test]
    fn membership_examples() {
        let f = field(2);
        let r = Ring::new(f.clone(), 2).unwrap();
        let u12 = r.parse("x1*y2 + x2*y1").unwrap();
        let s = span_of_degree(&f, 4, 2, &[u12.clone()]).unwrap();
        assert!(s.contains(&u12).unwrap());
        let sn = span_of_degree(&f, 4, 2, &[r.parse("x1*y1").unwrap()]).unwrap();
        assert!(!sn.contains(&r.parse("x2*y2").unwrap()).unwrap());
        assert!(sn.contains(&r.x(0)).is_err());
    }

    #[test]
    fn multidegree_space_order_matches_monomial_order() {
        let sp = MonomialSpace::multidegree(&[2, 1, 3]);
        assert_eq!(sp.len(), 3 * 2 * 4);
        assert!(sp.monomials().windows(2).all(|w| w[0] < w[1]));
        for (i, m) in sp.monomials().iter().enumerate() {
            assert_eq!(sp.index_of(m), Some(i));
        }
    }

    #[test]
    fn univariate_plus_dimensions() {
        let f = field(2);
        let t = build_group(&f, GroupKind::Plus).unwrap();
        let acts = actions(&f, t.generators());
        let dim = |d: usize| fixed_subspace(&f, &Arc::new(MonomialSpace::degree(2, d)), &acts).rank();
        assert_eq!(dim(0), 1);
        assert_eq!(dim(2), 1);
        assert_eq!(dim(5), 1);
        assert_eq!(dim(6), 2);
    }

    #[test]
    fn orbit_and_dense_agree() {
        let f = field(2);
        let t = build_group(&f, GroupKind::Plus).unwrap();
        let gens = actions(&f, t.generators());
        let all = actions(&f, t.elements());
        for mu in [[3u16, 0], [2, 1], [3, 3], [4, 2]] {
            let sp = Arc::new(MonomialSpace::multidegree(&mu));
            let a = fixed_subspace_orbits(&f, &sp, &gens);
            let b = fixed_subspace_dense(&f, &sp, &gens);
            let c = fixed_subspace_orbits(&f, &sp, &all);
            assert!(a.same_as(&b));
            assert!(a.same_as(&c));
            assert_eq!(a.rows(), b.rows());
        }
    }

    #[test]
    fn minus_fixed_space_m1() {
        let f = field(2);
        let t = build_group(&f, GroupKind::Minus).unwrap();
        let acts = actions(&f, t.elements());
        let dims: Vec<usize> = (0..8)
            .map(|d| fixed_subspace(&f, &Arc::new(MonomialSpace::degree(2, d)), &acts).rank())
            .collect();
        // 1/((1-t^2)(1-t^5))
        assert_eq!(dims, [1, 0, 1, 0, 1, 1, 1, 1]);
    }
}
