//! Sparse polynomials over GF(q) in the variables x1..xm, y1..ym.
//!
//! Variables are stored in the order x1, ..., xm, y1, ..., ym. Monomials are
//! compared by total degree and then lexicographically with the last variable
//! (ym) most significant, so for m = 1 the degree-2 monomials ascend as
//! x^2 < xy < y^2.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{usage, Error, Result};
use crate::field::{Fe, FieldContext};

pub const MAX_VARS: usize = 32;

/// Exponent vector of length `2m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        assert!(nvars <= MAX_VARS);
        Monomial {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            degree: 0,
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Result<Monomial> {
        if exps.len() > MAX_VARS {
            return Err(usage(format!("at most {MAX_VARS} variables are supported")));
        }
        let mut m = Monomial::one(exps.len());
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().map(|&e| e as u32).sum();
        Ok(m)
    }

    /// The single variable with index `var`.
    pub fn var(nvars: usize, var: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[var] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = *self;
        for i in 0..self.nvars as usize {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .ok_or_else(|| usage("exponent overflow beyond 2^16"))?;
        }
        out.degree += other.degree;
        Ok(out)
    }

    pub fn checked_pow(&self, e: u32) -> Result<Monomial> {
        let mut out = *self;
        for i in 0..self.nvars as usize {
            let v = self.exps[i] as u32 * e;
            out.exps[i] = u16::try_from(v).map_err(|_| usage("exponent overflow beyond 2^16"))?;
        }
        out.degree = self.degree * e;
        Ok(out)
    }

    /// Per-copy degrees `deg_{x_i} + deg_{y_i}` for `m = nvars / 2` copies.
    pub fn multidegree(&self) -> Vec<u16> {
        let m = self.nvars as usize / 2;
        (0..m).map(|i| self.exps[i] + self.exps[m + i]).collect()
    }

    /// Exchanges the exponents of `x_i` and `y_i` for every copy.
    pub fn swap_xy(&self) -> Monomial {
        let m = self.nvars as usize / 2;
        let mut out = *self;
        for i in 0..m {
            out.exps.swap(i, m + i);
        }
        out
    }

    /// Total x-degree and y-degree.
    pub fn xy_degrees(&self) -> (usize, usize) {
        let m = self.nvars as usize / 2;
        let xs = self.exps[..m].iter().map(|&e| e as usize).sum();
        let ys = self.exps[m..2 * m].iter().map(|&e| e as usize).sum();
        (xs, ys)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| {
                let n = self.nvars.max(other.nvars) as usize;
                self.exps[..n].iter().rev().cmp(other.exps[..n].iter().rev())
            })
            .then_with(|| self.nvars.cmp(&other.nvars))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn var_name(nvars: usize, var: usize) -> String {
    let m = nvars / 2;
    if var < m {
        format!("x{}", var + 1)
    } else {
        format!("y{}", var - m + 1)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&var_name(self.nvars(), v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: u8,
    terms: BTreeMap<Monomial, Fe>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        assert!(nvars <= MAX_VARS);
        Polynomial {
            nvars: nvars as u8,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Fe) -> Polynomial {
        Polynomial::term(Monomial::one(nvars), c)
    }

    pub fn term(mono: Monomial, c: Fe) -> Polynomial {
        let mut p = Polynomial::zero(mono.nvars());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn from_monomial(mono: Monomial) -> Polynomial {
        Polynomial::term(mono, Fe::ONE)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, Fe)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, mono: &Monomial) -> Fe {
        self.terms.get(mono).copied().unwrap_or(Fe::ZERO)
    }

    /// Adds `c * mono` in place.
    pub fn add_term(&mut self, mono: Monomial, c: Fe) {
        debug_assert_eq!(mono.nvars(), self.nvars());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = *o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in other.terms() {
            self.add_term(*m, c);
        }
    }

    /// Highest total degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// The sum of the degree-`d` terms.
    pub fn graded_piece(&self, d: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, &c)| (*m, c))
                .collect(),
        }
    }

    /// The common multidegree of all terms, if there is one.
    pub fn multidegree(&self) -> Option<Vec<u16>> {
        let mut it = self.terms.keys();
        let mu = it.next()?.multidegree();
        it.all(|m| m.multidegree() == mu).then_some(mu)
    }

    /// Splits into components of fixed multidegree.
    pub fn multigraded_parts(&self) -> BTreeMap<Vec<u16>, Polynomial> {
        let mut parts: BTreeMap<Vec<u16>, Polynomial> = BTreeMap::new();
        for (m, c) in self.terms() {
            parts
                .entry(m.multidegree())
                .or_insert_with(|| Polynomial::zero(self.nvars()))
                .terms
                .insert(*m, c);
        }
        parts
    }

    /// The image under `x_i <-> y_i`.
    pub fn swap_xy(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &c)| (m.swap_xy(), c)).collect(),
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Terms in ascending order joined by `" + "`; unit coefficients and zero
/// exponents omitted, e.g. `x1^2*y2 + 3*x2*y1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (c == Fe::ONE, m.degree() == 0) {
                (true, _) => write!(f, "{m}")?,
                (false, true) => write!(f, "{c}")?,
                (false, false) => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

/// The polynomial ring GF(q)[x1..xm, y1..ym].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    field: Arc<FieldContext>,
    m: usize,
}

impl Ring {
    pub fn new(field: Arc<FieldContext>, m: usize) -> Result<Ring> {
        if m == 0 || 2 * m > MAX_VARS {
            return Err(usage(format!(
                "number of copies m = {m} outside 1..={}",
                MAX_VARS / 2
            )));
        }
        Ok(Ring { field, m })
    }

    #[inline]
    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        2 * self.m
    }

    pub fn var_name(&self, var: usize) -> String {
        var_name(self.nvars(), var)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self.nvars(), Fe::ONE)
    }

    pub fn constant(&self, c: Fe) -> Polynomial {
        Polynomial::constant(self.nvars(), c)
    }

    /// `x_{i+1}` (zero-based copy index).
    pub fn x(&self, i: usize) -> Polynomial {
        assert!(i < self.m);
        Polynomial::from_monomial(Monomial::var(self.nvars(), i))
    }

    /// `y_{i+1}` (zero-based copy index).
    pub fn y(&self, i: usize) -> Polynomial {
        assert!(i < self.m);
        Polynomial::from_monomial(Monomial::var(self.nvars(), self.m + i))
    }

    /// The monomial `x^alpha * y^beta` for exponent vectors of length `m`.
    pub fn xy_monomial(&self, alpha: &[u16], beta: &[u16]) -> Result<Monomial> {
        if alpha.len() != self.m || beta.len() != self.m {
            return Err(usage("exponent vectors must have length m"));
        }
        let mut exps = Vec::with_capacity(self.nvars());
        exps.extend_from_slice(alpha);
        exps.extend_from_slice(beta);
        Monomial::from_exponents(&exps)
    }

    pub(crate) fn check(&self, p: &Polynomial) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(usage(format!(
                "polynomial in {} variables used in a ring with {}",
                p.nvars(),
                self.nvars()
            )));
        }
        Ok(())
    }

    pub fn add(&self, p: &Polynomial, r: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        self.check(r)?;
        let mut out = p.clone();
        out.add_assign(r);
        Ok(out)
    }

    pub fn scale(&self, p: &Polynomial, c: Fe) -> Result<Polynomial> {
        self.check(p)?;
        let mut out = self.zero();
        if c.is_zero() {
            return Ok(out);
        }
        for (m, a) in p.terms() {
            out.terms.insert(*m, self.field.mul(a, c));
        }
        Ok(out)
    }

    pub fn mul(&self, p: &Polynomial, r: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        self.check(r)?;
        let mut out = self.zero();
        for (ma, a) in p.terms() {
            for (mb, b) in r.terms() {
                out.add_term(ma.checked_mul(mb)?, self.field.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, p: &Polynomial, mut e: u32) -> Result<Polynomial> {
        self.check(p)?;
        let mut base = p.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Polynomial>) -> Result<Polynomial> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, p: &Polynomial, var: usize) -> Result<Polynomial> {
        self.check(p)?;
        if var >= self.nvars() {
            return Err(usage(format!("variable index {var} out of range")));
        }
        let mut out = self.zero();
        for (m, c) in p.terms() {
            let e = m.exponent(var);
            // the integer e acts as e mod 2
            if e % 2 == 1 {
                let mut exps = m.exponents().to_vec();
                exps[var] -= 1;
                out.add_term(Monomial::from_exponents(&exps)?, c);
            }
        }
        Ok(out)
    }

    /// All monomials of total degree `d`, ascending.
    pub fn monomials_of_degree(&self, d: usize) -> Vec<Monomial> {
        monomials_of_degree(self.nvars(), d)
    }

    /// Image of `p` under the algebra endomorphism sending variable `v` to
    /// `images[v]`; each image must be a linear form.
    pub fn substitute_linear(&self, p: &Polynomial, images: &[Polynomial]) -> Result<Polynomial> {
        self.check(p)?;
        if images.len() != self.nvars() {
            return Err(usage(format!(
                "expected {} images, got {}",
                self.nvars(),
                images.len()
            )));
        }
        for (v, img) in images.iter().enumerate() {
            self.check(img)?;
            if !img.is_zero() && img.homogeneous_degree() != Some(1) {
                return Err(usage(format!(
                    "image of {} is not a linear form: {img}",
                    self.var_name(v)
                )));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|img| vec![self.one(), img.clone()]).collect();
        let mut out = self.zero();
        for (m, c) in p.terms() {
            let mut acc = self.constant(c);
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[v].len() <= e {
                    let next = self.mul(powers[v].last().unwrap(), &images[v])?;
                    powers[v].push(next);
                }
                acc = self.mul(&acc, &powers[v][e])?;
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// Parses the text format produced by `Display`.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse(String::from("empty input")));
        }
        let mut out = self.zero();
        for raw in text.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            let mut coeff: Option<Fe> = None;
            let mut exps = vec![0u16; self.nvars()];
            for factor in term.split('*') {
                let factor = factor.trim();
                if let Some(first) = factor.chars().next() {
                    if first.is_ascii_digit() {
                        if coeff.is_some() {
                            return Err(Error::Parse(format!("two coefficients in {term:?}")));
                        }
                        let bits: u32 = factor
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
                        coeff = Some(self.field.element(bits).map_err(|_| {
                            Error::Parse(format!("coefficient {bits} is not in GF({})", self.field.q()))
                        })?);
                        continue;
                    }
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let e: u16 = e
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                        (n.trim(), e)
                    }
                    None => (factor, 1),
                };
                let var = self.parse_var(name)?;
                exps[var] = exps[var]
                    .checked_add(exp)
                    .ok_or_else(|| Error::Parse(format!("exponent overflow in {term:?}")))?;
            }
            out.add_term(Monomial::from_exponents(&exps)?, coeff.unwrap_or(Fe::ONE));
        }
        Ok(out)
    }

    fn parse_var(&self, name: &str) -> Result<usize> {
        let bad = || Error::Parse(format!("unknown variable {name:?}"));
        let (kind, idx) = name.split_at_checked(1).ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if idx == 0 || idx > self.m {
            return Err(bad());
        }
        match kind {
            "x" => Ok(idx - 1),
            "y" => Ok(self.m + idx - 1),
            _ => Err(bad()),
        }
    }
}

/// All monomials in `nvars` variables of total degree `d`, ascending.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    // The most significant variable is the last one; fill it from 0 upward.
    fn rec(exps: &mut [u16], pos: usize, remaining: usize, out: &mut Vec<Monomial>) {
        if pos == 0 {
            exps[0] = remaining as u16;
            out.push(Monomial::from_exponents(exps).expect("bounded exponents"));
            return;
        }
        for e in 0..=remaining {
            exps[pos] = e as u16;
            rec(exps, pos - 1, remaining - e, out);
        }
        exps[pos] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(&mut exps, nvars - 1, d, &mut out);
    out
}
