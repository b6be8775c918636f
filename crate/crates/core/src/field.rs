//! Exact arithmetic in GF(p^k), modeled as Z_p[x]/(f(x)) for a primitive
//! monic modulus f.
//!
//! Elements are stored by their little-endian base-p encoding: the element
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is the integer `c_0 + c_1 p + ...`.
//! The prime subfield therefore occupies the encodings `0..p`.
//!
//! Multiplication, powers and discrete logs go through precomputed
//! power/log tables of the generator `x`. The tables are built by repeated
//! polynomial multiplication by `x` and reduction by the modulus;
//! [`FieldSpec::mul_by_reduction`] exposes the same polynomial route for
//! cross-checking.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on the number of field elements.
pub const DEFAULT_SIZE_BOUND: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct FieldTag {
    p: u32,
    k: u32,
    modulus: u32,
}

/// An element of a particular [`FieldSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    tag: FieldTag,
    value: u32,
}

impl FieldElement {
    /// Integer encoding (little-endian base p).
    pub fn encode(self) -> u32 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Coefficient vector of length k; entry i multiplies x^i.
    pub fn coeffs(self) -> Vec<u32> {
        digits(self.value, self.tag.p, self.tag.k as usize)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A concrete finite field GF(p^k) with its modulus and generator tables.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    power: Vec<u32>,
    log: Vec<u32>,
    tag: FieldTag,
}

impl FieldSpec {
    /// Builds GF(p^k). A supplied modulus (constant term first, `k + 1`
    /// coefficients) is validated; otherwise the primitive monic polynomial
    /// with the smallest encoding of its lower coefficients is used.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::with_size_bound(p, k, modulus, DEFAULT_SIZE_BOUND)
    }

    pub fn with_size_bound(p: u32, k: u32, modulus: Option<&[u32]>, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= bound && q <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge { p, k, bound })?;
        let order = order as u32;

        match modulus {
            Some(m) => {
                let m = validate_modulus(m, p, k as usize)?;
                if !is_irreducible(&m, p) {
                    return Err(Error::ModulusReducible);
                }
                Self::build(p, k, order, m)
            }
            None => {
                for low in 0..order {
                    let mut m = digits(low, p, k as usize);
                    m.push(1);
                    if !is_irreducible(&m, p) {
                        continue;
                    }
                    match Self::build(p, k, order, m) {
                        Ok(field) => return Ok(field),
                        Err(Error::ModulusNotPrimitive { .. }) => continue,
                        Err(e) => return Err(e),
                    }
                }
                Err(Error::NoPrimitivePolynomial { p, k })
            }
        }
    }

    fn build(p: u32, k: u32, order: u32, modulus: Vec<u32>) -> Result<Self> {
        let ku = k as usize;
        let group = order - 1;
        let mut power = Vec::with_capacity(group as usize);
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = vec![0u32; ku];
        cur[0] = 1;
        for e in 0..group {
            let enc = undigits(&cur, p);
            if e > 0 && enc == 1 {
                return Err(Error::ModulusNotPrimitive {
                    order: e,
                    expected: group,
                });
            }
            power.push(enc);
            log[enc as usize] = e;
            times_x(&mut cur, &modulus, p);
        }
        let wrapped = undigits(&cur, p);
        if wrapped != 1 {
            // x^(q-1) != 1 cannot happen for an irreducible modulus.
            return Err(Error::ModulusNotPrimitive {
                order: 0,
                expected: group,
            });
        }
        let tag = FieldTag {
            p,
            k,
            modulus: undigits(&modulus[..ku], p),
        };
        Ok(Self {
            p,
            k,
            order,
            modulus,
            power,
            log,
            tag,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of elements, p^k.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Modulus coefficients, constant term first; the last entry is 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Table mapping exponent e to the encoding of x^e, for e in [0, p^k - 1).
    pub fn power_table(&self) -> &[u32] {
        &self.power
    }

    /// Multiplicative order of the generator x.
    pub fn generator_order(&self) -> u32 {
        let mut seen = BTreeSet::new();
        for &v in &self.power {
            if !seen.insert(v) {
                break;
            }
        }
        seen.len() as u32
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class of x.
    pub fn generator(&self) -> FieldElement {
        self.x_pow(1)
    }

    /// x^e for any integer exponent, reduced mod p^k - 1.
    pub fn x_pow(&self, e: i64) -> FieldElement {
        let group = (self.order - 1) as i64;
        self.wrap(self.power[e.rem_euclid(group) as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|v| self.wrap(v))
    }

    fn wrap(&self, value: u32) -> FieldElement {
        FieldElement {
            tag: self.tag,
            value,
        }
    }

    fn check(&self, a: FieldElement) -> Result<u32> {
        if a.tag == self.tag {
            Ok(a.value)
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.k as usize {
            return Err(Error::WrongCoefficientCount {
                expected: self.k as usize,
                found: coeffs.len(),
            });
        }
        let reduced: Vec<u32> = coeffs.iter().map(|c| c % self.p).collect();
        Ok(self.wrap(undigits(&reduced, self.p)))
    }

    pub fn decode(&self, n: u64) -> Result<FieldElement> {
        if n < self.order as u64 {
            Ok(self.wrap(n as u32))
        } else {
            Err(Error::EncodingOutOfRange(n))
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.wrap(self.add_raw(a, b)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.wrap(self.add_raw(a, self.neg_raw(b))))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        let a = self.check(a)?;
        Ok(self.wrap(self.neg_raw(a)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        if a == 0 || b == 0 {
            return Ok(self.zero());
        }
        let group = (self.order - 1) as u64;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % group;
        Ok(self.wrap(self.power[e as usize]))
    }

    /// Product computed by polynomial multiplication and reduction by the
    /// modulus, without the tables.
    pub fn mul_by_reduction(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        let k = self.k as usize;
        let p = self.p as u64;
        let (da, db) = (digits(a, self.p, k), digits(b, self.p, k));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (k..prod.len()).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            // x^deg = x^(deg-k) * x^k and x^k = -(m_0 + ... + m_{k-1} x^{k-1})
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - lead) * m as u64) % p;
            }
            prod[deg] = 0;
        }
        let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        Ok(self.wrap(undigits(&low, self.p)))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        let a = self.check(a)?;
        if e == 0 {
            return Ok(self.one());
        }
        if a == 0 {
            return Ok(self.zero());
        }
        let group = (self.order - 1) as u64;
        let exp = ((self.log[a as usize] as u64 % group) * (e % group)) % group;
        Ok(self.wrap(self.power[exp as usize]))
    }

    /// Exponent e in [0, p^k - 1) with x^e = a.
    pub fn dlog(&self, a: FieldElement) -> Result<u32> {
        let a = self.check(a)?;
        if a == 0 {
            return Err(Error::ZeroLog);
        }
        Ok(self.log[a as usize])
    }

    /// c * a for an integer scalar c, reduced mod p.
    pub fn scalar_mul(&self, c: u32, a: FieldElement) -> Result<FieldElement> {
        let a = self.check(a)?;
        let c = (c % self.p) as u64;
        let p = self.p as u64;
        let d: Vec<u32> = digits(a, self.p, self.k as usize)
            .into_iter()
            .map(|x| ((x as u64 * c) % p) as u32)
            .collect();
        Ok(self.wrap(undigits(&d, self.p)))
    }

    /// Z_p-linear span of `elems`.
    pub fn span(&self, elems: &[FieldElement]) -> Result<BTreeSet<FieldElement>> {
        let mut set: BTreeSet<u32> = BTreeSet::from([0]);
        for &g in elems {
            let g = self.check(g)?;
            if set.contains(&g) {
                continue;
            }
            let mut next = BTreeSet::new();
            for &s in &set {
                let mut acc = s;
                for _ in 0..self.p {
                    next.insert(acc);
                    acc = self.add_raw(acc, g);
                }
            }
            set = next;
        }
        Ok(set.into_iter().map(|v| self.wrap(v)).collect())
    }

    /// Dimension of the span of `elems` over Z_p.
    pub fn rank(&self, elems: &[FieldElement]) -> Result<usize> {
        let mut size = self.span(elems)?.len();
        let mut r = 0;
        while size > 1 {
            size /= self.p as usize;
            r += 1;
        }
        Ok(r)
    }

    /// True iff the k given elements form a basis over the prime field.
    pub fn is_basis(&self, elems: &[FieldElement]) -> Result<bool> {
        if elems.len() != self.k as usize {
            return Err(Error::WrongElementCount {
                expected: self.k as usize,
                found: elems.len(),
            });
        }
        Ok(self.span(elems)?.len() as u64 == self.order as u64)
    }

    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.k {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u32> = digits(a, self.p, self.k as usize)
            .into_iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        undigits(&d, self.p)
    }
}

fn digits(mut value: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(value % p);
        value /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Multiply a coefficient vector (length k) by x modulo a monic modulus.
fn times_x(cur: &mut [u32], modulus: &[u32], p: u32) {
    let k = cur.len();
    let top = cur[k - 1] as u64;
    for i in (1..k).rev() {
        cur[i] = cur[i - 1];
    }
    cur[0] = 0;
    if top != 0 {
        let p64 = p as u64;
        for i in 0..k {
            cur[i] = ((cur[i] as u64 + (p64 - top) * modulus[i] as u64) % p64) as u32;
        }
    }
}

fn validate_modulus(m: &[u32], p: u32, k: usize) -> Result<Vec<u32>> {
    if let Some(&c) = m.iter().find(|&&c| c >= p) {
        return Err(Error::ModulusCoefficientOutOfRange(c));
    }
    let degree = m.iter().rposition(|&c| c != 0).unwrap_or(0);
    if degree != k {
        return Err(Error::ModulusWrongDegree {
            expected: k,
            found: degree,
        });
    }
    if m[degree] != 1 {
        return Err(Error::ModulusNotMonic);
    }
    Ok(m[..=degree].to_vec())
}

/// Irreducibility over Z_p by trial division with every monic polynomial of
/// degree at most half the degree of `f`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low as u32, p, d);
            g.push(1);
            if divides(&g, f, p) {
                return false;
            }
        }
    }
    true
}

/// Whether monic `g` divides `f` over Z_p.
fn divides(g: &[u32], f: &[u32], p: u32) -> bool {
    let p = p as u64;
    let dg = g.len() - 1;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    for deg in (dg..r.len()).rev() {
        let lead = r[deg];
        if lead == 0 {
            continue;
        }
        for (i, &c) in g.iter().enumerate() {
            let idx = deg - dg + i;
            r[idx] = (r[idx] + (p - lead) * c as u64) % p;
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> FieldSpec {
        FieldSpec::new(2, 4, Some(&[1, 1, 0, 0, 1])).unwrap()
    }

    #[test]
    fn gf16_generator_has_order_15() {
        let f = gf16();
        assert_eq!(f.order(), 16);
        assert_eq!(f.generator_order(), 15);
        assert_eq!(f.x_pow(15), f.one());
    }

    #[test]
    fn default_gf16_modulus_is_x4_x_1() {
        assert_eq!(
            FieldSpec::new(2, 4, None).unwrap().modulus(),
            &[1, 1, 0, 0, 1]
        );
    }

    #[test]
    fn prime_field_tables_are_primitive_root_tables() {
        let f = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f.modulus().len(), 2);
        let mut seen: Vec<u32> = f.power_table().to_vec();
        seen.sort();
        assert_eq!(seen, (1..7).collect::<Vec<_>>());
        // x = -c0; c0 = 2 is the first constant term making -c0 = 5 a primitive root.
        assert_eq!(f.modulus(), &[2, 1]);
        assert_eq!(f.generator().encode(), 5);
        assert_eq!(f.generator_order(), 6);
    }

    #[test]
    fn gf16_addition_examples() {
        let f = gf16();
        assert_eq!(f.add(f.one(), f.x_pow(13)).unwrap(), f.x_pow(6));
        let a = f.x_pow(7);
        assert_eq!(f.add(a, f.zero()).unwrap(), a);
    }

    #[test]
    fn gf9_negation_shifts_exponent_by_four() {
        let f = FieldSpec::new(3, 2, None).unwrap();
        for e in 0..8 {
            assert_eq!(f.neg(f.x_pow(e)).unwrap(), f.x_pow(e + 4));
        }
    }

    #[test]
    fn dlog_and_mul_examples() {
        let f = gf16();
        let e = f.element(&[1, 0, 1, 1]).unwrap();
        assert_eq!(f.dlog(e).unwrap(), 13);
        assert_eq!(f.pow(f.generator(), 0).unwrap(), f.one());
        assert_eq!(f.mul(f.x_pow(8), f.x_pow(3)).unwrap(), f.x_pow(11));
        assert!(matches!(f.dlog(f.zero()), Err(Error::ZeroLog)));
    }

    #[test]
    fn scalar_mul_examples() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let x = f9.generator();
        assert_eq!(f9.scalar_mul(2, x).unwrap().coeffs(), vec![0, 2]);
        assert_eq!(f9.scalar_mul(0, x).unwrap(), f9.zero());
        assert_eq!(f9.scalar_mul(1, x).unwrap(), x);
        let f = gf16();
        assert_eq!(f.scalar_mul(2, f.x_pow(5)).unwrap(), f.zero());
    }

    #[test]
    fn span_examples() {
        let f = gf16();
        assert_eq!(f.span(&[]).unwrap(), BTreeSet::from([f.zero()]));
        let a = f.span(&[f.one(), f.x_pow(13), f.x_pow(3)]).unwrap();
        let b = f.span(&[f.x_pow(3), f.x_pow(14), f.x_pow(6)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        assert_eq!(f9.span(&[f9.one(), f9.generator()]).unwrap().len(), 9);
    }

    #[test]
    fn basis_examples() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        assert!(f9.is_basis(&[f9.one(), f9.generator()]).unwrap());
        assert!(!f9.is_basis(&[f9.one(), f9.one()]).unwrap());
        assert!(matches!(
            f9.is_basis(&[f9.one()]),
            Err(Error::WrongElementCount { .. })
        ));
    }

    #[test]
    fn encoding_examples() {
        let f = gf16();
        assert_eq!(f.zero().encode(), 0);
        assert_eq!(f.generator().encode(), 2);
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        assert_eq!(f9.element(&[2, 1]).unwrap().encode(), 5);
        assert!(f9.decode(9).is_err());
    }

    #[test]
    fn modulus_errors_are_distinct() {
        assert!(matches!(
            FieldSpec::new(4, 2, None),
            Err(Error::NotPrime(4))
        ));
        assert!(matches!(
            FieldSpec::new(2, 4, Some(&[1, 1, 0, 1])),
            Err(Error::ModulusWrongDegree {
                expected: 4,
                found: 3
            })
        ));
        assert!(matches!(
            FieldSpec::new(3, 2, Some(&[1, 1, 2])),
            Err(Error::ModulusNotMonic)
        ));
        // x^4 + 1 = (x + 1)^4 over Z_2
        assert!(matches!(
            FieldSpec::new(2, 4, Some(&[1, 0, 0, 0, 1])),
            Err(Error::ModulusReducible)
        ));
        // x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5
        assert!(matches!(
            FieldSpec::new(2, 4, Some(&[1, 1, 1, 1, 1])),
            Err(Error::ModulusNotPrimitive {
                order: 5,
                expected: 15
            })
        ));
        assert!(matches!(
            FieldSpec::new(3, 13, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f = gf16();
        let g = FieldSpec::new(3, 2, None).unwrap();
        assert!(matches!(f.add(f.one(), g.one()), Err(Error::MixedFields)));
        assert!(matches!(f.dlog(g.one()), Err(Error::MixedFields)));
    }
}
