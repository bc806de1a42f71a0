//! Arithmetic in GF(2^s), elements stored in the polynomial basis.
//!
//! A [`FieldContext`] owns the modulus and the log/antilog tables built from
//! its primitive element. Multiplication through the tables is checked against
//! schoolbook carry-less multiplication in the tests.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Sub, SubAssign};

use crate::error::{usage, Error, Result};

pub const MIN_EXPONENT: u32 = 2;
pub const MAX_EXPONENT: u32 = 16;

/// An element of GF(2^s): bit `i` is the coefficient of `z^i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fe(u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub const fn bits(self) -> u16 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Raw constructor; the caller guarantees `bits < q`.
    #[inline]
    pub(crate) const fn from_bits(bits: u16) -> Fe {
        Fe(bits)
    }
}

impl Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        Fe(self.0 ^ rhs.0)
    }
}

impl AddAssign for Fe {
    #[inline]
    fn add_assign(&mut self, rhs: Fe) {
        self.0 ^= rhs.0;
    }
}

impl Sub for Fe {
    type Output = Fe;
    #[inline]
    fn sub(self, rhs: Fe) -> Fe {
        Fe(self.0 ^ rhs.0)
    }
}

impl SubAssign for Fe {
    #[inline]
    fn sub_assign(&mut self, rhs: Fe) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Degree of a GF(2)[z] polynomial given as a bit vector.
pub fn bit_degree(p: u32) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(31 - p.leading_zeros())
    }
}

/// Remainder of `a` modulo `b` in GF(2)[z].
pub fn bit_poly_rem(mut a: u32, b: u32) -> u32 {
    let db = bit_degree(b).expect("division by the zero polynomial");
    while let Some(da) = bit_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Smallest nontrivial factor of `p` over GF(2), if `p` is reducible.
pub fn smallest_factor(p: u32) -> Option<u32> {
    let deg = bit_degree(p)?;
    for d in 1..=deg / 2 {
        for f in (1u32 << d)..(1u32 << (d + 1)) {
            if bit_poly_rem(p, f) == 0 {
                return Some(f);
            }
        }
    }
    None
}

/// Least-encoded irreducible polynomial of degree `s`. For s = 2, 3, 4 this is
/// z^2+z+1, z^3+z+1 and z^4+z+1.
pub fn default_modulus(s: u32) -> u32 {
    ((1u32 << s)..(1u32 << (s + 1)))
        .find(|&p| smallest_factor(p).is_none())
        .expect("irreducible polynomials exist in every degree")
}

/// Builds a modulus from the exponents of its nonzero terms, e.g. `[2, 1, 0]`.
pub fn modulus_from_exponents(exponents: &[u32]) -> Result<u32> {
    let mut p = 0u32;
    for &e in exponents {
        if e > MAX_EXPONENT {
            return Err(usage(format!("modulus exponent {e} exceeds {MAX_EXPONENT}")));
        }
        if p & (1 << e) != 0 {
            return Err(usage(format!("modulus exponent {e} repeated")));
        }
        p |= 1 << e;
    }
    Ok(p)
}

/// Human-readable form of a GF(2)[z] polynomial, highest degree first.
pub fn format_bit_poly(p: u32) -> String {
    if p == 0 {
        return String::from("0");
    }
    let mut parts = Vec::new();
    for i in (0..32).rev() {
        if p & (1 << i) != 0 {
            parts.push(match i {
                0 => String::from("1"),
                1 => String::from("z"),
                _ => format!("z^{i}"),
            });
        }
    }
    parts.join(" + ")
}

/// GF(2^s) with a verified modulus, a primitive element and the element `w`
/// lying outside `{x^2 + x}`.
#[derive(Clone, Debug)]
pub struct FieldContext {
    s: u32,
    q: u32,
    modulus: u32,
    primitive: Fe,
    w: Fe,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    /// GF(2^s) with the default modulus.
    pub fn new(s: u32) -> Result<Self> {
        Self::with_modulus(s, None)
    }

    pub fn with_modulus(s: u32, modulus: Option<u32>) -> Result<Self> {
        if !(MIN_EXPONENT..=MAX_EXPONENT).contains(&s) {
            return Err(usage(format!(
                "field exponent s = {s} outside {MIN_EXPONENT}..={MAX_EXPONENT}"
            )));
        }
        let modulus = match modulus {
            None => default_modulus(s),
            Some(p) => {
                if bit_degree(p) != Some(s) {
                    return Err(usage(format!(
                        "modulus {} does not have degree {s}",
                        format_bit_poly(p)
                    )));
                }
                if let Some(factor) = smallest_factor(p) {
                    return Err(Error::Reducible { modulus: p, factor });
                }
                p
            }
        };
        let q = 1u32 << s;
        let mut ctx = FieldContext {
            s,
            q,
            modulus,
            primitive: Fe::ZERO,
            w: Fe::ZERO,
            exp: Vec::new(),
            log: Vec::new(),
        };

        ctx.primitive = (2..q)
            .map(|b| Fe(b as u16))
            .find(|&g| ctx.order_schoolbook(g) == q - 1)
            .expect("the unit group of a finite field is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u16; 2 * n];
        let mut log = vec![0u16; q as usize];
        let mut acc = Fe::ONE;
        for i in 0..n {
            exp[i] = acc.0;
            exp[i + n] = acc.0;
            log[acc.0 as usize] = i as u16;
            acc = ctx.mul_schoolbook(acc, ctx.primitive);
        }
        ctx.exp = exp;
        ctx.log = log;

        ctx.w = ctx
            .elements()
            .find(|&x| ctx.trace(x) == Fe::ONE)
            .expect("the trace form is onto GF(2)");
        if ctx.elements().any(|x| ctx.square(x) + x == ctx.w) {
            // Trace-1 elements are exactly the complement of {x^2 + x}.
            unreachable!("trace-1 element is of the form x^2 + x");
        }
        Ok(ctx)
    }

    #[inline]
    pub fn s(&self) -> u32 {
        self.s
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn primitive(&self) -> Fe {
        self.primitive
    }

    /// The fixed element with `x^2 + x != w` for every `x`.
    #[inline]
    pub fn w(&self) -> Fe {
        self.w
    }

    /// Checked constructor from the decimal encoding.
    pub fn element(&self, bits: u32) -> Result<Fe> {
        if bits < self.q {
            Ok(Fe(bits as u16))
        } else {
            Err(usage(format!("{bits} is not an element of GF({})", self.q)))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q).map(|b| Fe(b as u16))
    }

    pub fn units(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.q).map(|b| Fe(b as u16))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let i = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        Fe(self.exp[i])
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    /// Carry-less multiplication followed by reduction modulo the modulus.
    pub fn mul_schoolbook(&self, a: Fe, b: Fe) -> Fe {
        let (a, b) = (a.0 as u32, b.0 as u32);
        let mut prod = 0u32;
        for i in 0..self.s {
            if b & (1 << i) != 0 {
                prod ^= a << i;
            }
        }
        Fe(bit_poly_rem(prod, self.modulus) as u16)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::Arithmetic("inverse of zero"));
        }
        let n = self.q as usize - 1;
        let l = self.log[a.0 as usize] as usize;
        Ok(Fe(self.exp[(n - l) % n]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents are reduced modulo `q - 1` on units. `0^0 = 1`.
    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe> {
        if a.is_zero() {
            return match e {
                0 => Ok(Fe::ONE),
                e if e > 0 => Ok(Fe::ZERO),
                _ => Err(Error::Arithmetic("negative power of zero")),
            };
        }
        let n = (self.q - 1) as i128;
        let l = self.log[a.0 as usize] as i128;
        let k = (l * e as i128).rem_euclid(n);
        Ok(Fe(self.exp[k as usize]))
    }

    /// Absolute trace `a + a^2 + ... + a^(2^(s-1))`, always 0 or 1.
    pub fn trace(&self, a: Fe) -> Fe {
        let mut t = Fe::ZERO;
        let mut x = a;
        for _ in 0..self.s {
            t += x;
            x = self.mul_schoolbook(x, x);
        }
        t
    }

    /// Multiplicative order of a unit, computed by repeated schoolbook products.
    pub fn order_schoolbook(&self, a: Fe) -> u32 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let mut x = a;
        let mut k = 1;
        while x != Fe::ONE {
            x = self.mul_schoolbook(x, a);
            k += 1;
        }
        k
    }

    /// `sum_{a != 0} a^e` by direct summation over the unit group.
    pub fn sum_of_unit_powers(&self, e: u64) -> Fe {
        let e = e as i64;
        self.units()
            .map(|a| self.pow(a, e).expect("units have every power"))
            .fold(Fe::ZERO, |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(2), 0b111);
        assert_eq!(default_modulus(3), 0b1011);
        assert_eq!(default_modulus(4), 0b10011);
        assert_eq!(smallest_factor(default_modulus(7)), None);
    }

    #[test]
    fn gf4_structure() {
        let f = FieldContext::new(2).unwrap();
        assert_eq!(f.q(), 4);
        let g = f.primitive();
        assert_eq!(f.order_schoolbook(g), 3);
        let units: Vec<Fe> = vec![Fe::ONE, g, f.square(g)];
        let mut sorted = units.clone();
        sorted.sort();
        assert_eq!(sorted, f.units().collect::<Vec<_>>());
        assert_eq!(f.pow(g, 3).unwrap(), Fe::ONE);
    }

    #[test]
    fn gf4_w_is_outside_artin_schreier_image() {
        let f = FieldContext::new(2).unwrap();
        let image: Vec<Fe> = f.elements().map(|x| f.square(x) + x).collect();
        assert!(image.iter().all(|&v| v == Fe::ZERO || v == Fe::ONE));
        let g = f.primitive();
        assert!(f.w() == g || f.w() == f.square(g));
        assert!(!image.contains(&f.w()));
    }

    #[test]
    fn gf8_primitive_has_order_seven() {
        let f = FieldContext::new(3).unwrap();
        assert_eq!(f.modulus(), 0b1011);
        assert_eq!(f.order_schoolbook(f.primitive()), 7);
    }

    #[test]
    fn reducible_modulus_names_a_factor() {
        // z^2 + 1 = (z + 1)^2
        let err = FieldContext::with_modulus(2, Some(0b101)).unwrap_err();
        assert_eq!(
            err,
            Error::Reducible {
                modulus: 0b101,
                factor: 0b11
            }
        );
    }

    #[test]
    fn exponent_out_of_range() {
        assert!(matches!(FieldContext::new(1), Err(Error::Usage(_))));
        assert!(matches!(FieldContext::new(17), Err(Error::Usage(_))));
        assert!(matches!(
            FieldContext::with_modulus(3, Some(0b111)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = FieldContext::new(3).unwrap();
        assert_eq!(f.inv(Fe::ZERO), Err(Error::Arithmetic("inverse of zero")));
        assert!(f.pow(Fe::ZERO, -1).is_err());
        assert_eq!(f.pow(Fe::ZERO, 0).unwrap(), Fe::ONE);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for s in 2..=4 {
            let f = FieldContext::new(s).unwrap();
            let n = (f.q() - 1) as i64;
            for a in f.elements() {
                assert_eq!(a + a, Fe::ZERO);
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
                    assert_eq!(f.square(a + b), f.square(a) + f.square(b));
                }
                if !a.is_zero() {
                    assert_eq!(f.pow(a, n).unwrap(), Fe::ONE);
                    assert_eq!(f.mul(f.inv(a).unwrap(), a), Fe::ONE);
                    assert_eq!(f.pow(a, -1).unwrap(), f.inv(a).unwrap());
                }
            }
        }
    }

    #[test]
    fn unit_power_sums_small_cases() {
        let f = FieldContext::new(2).unwrap();
        assert_eq!(f.sum_of_unit_powers(3), Fe::ONE);
        assert_eq!(f.sum_of_unit_powers(2), Fe::ZERO);
        assert_eq!(f.sum_of_unit_powers(0), Fe::ONE);
    }

    #[test]
    fn custom_modulus_is_accepted() {
        // z^3 + z^2 + 1
        let f = FieldContext::with_modulus(3, Some(0b1101)).unwrap();
        assert_eq!(f.order_schoolbook(f.primitive()), 7);
        assert_eq!(modulus_from_exponents(&[3, 2, 0]).unwrap(), 0b1101);
        assert!(modulus_from_exponents(&[2, 2]).is_err());
    }
}
