//! Table-driven arithmetic in GF(q) for prime powers `2 <= q <= 16`.
//!
//! Elements are encoded as integers `0..q`. For a prime field the code is
//! the residue mod `p`. For `q = p^e` with `e > 1` an element
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` (reduced modulo the field's fixed
//! irreducible polynomial) has code `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`.
//!
//! The moduli are the Conway polynomials:
//!
//! | q  | modulus           |
//! |----|-------------------|
//! | 4  | x^2 + x + 1       |
//! | 8  | x^3 + x + 1       |
//! | 9  | x^2 + 2x + 2      |
//! | 16 | x^4 + x + 1       |

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element code, always `< q`.
pub type Elem = u8;

pub const MAX_Q: u32 = 16;

/// Modulus coefficients, constant term first, leading 1 included.
fn conway_modulus(q: u32) -> Option<&'static [u8]> {
    match q {
        4 => Some(&[1, 1, 1]),
        8 => Some(&[1, 1, 0, 1]),
        9 => Some(&[2, 2, 1]),
        16 => Some(&[1, 1, 0, 0, 1]),
        _ => None,
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

struct Tables {
    q: u32,
    p: u32,
    e: u32,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    modulus: Option<Vec<u8>>,
}

/// A finite field GF(q) with precomputed operation tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.t.q)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.t.q == other.t.q
    }
}

impl Eq for FieldSpec {}

fn to_coeffs(mut code: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let c = code % p;
            code /= p;
            c
        })
        .collect()
}

fn from_coeffs(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u8], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // monic modulus: x^e = -(m_0 + ... + m_{e-1} x^{e-1})
    for deg in (e..2 * e).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus[..e].iter().enumerate() {
            let sub = (c * m as u32) % p;
            let slot = &mut prod[deg - e + i];
            *slot = (*slot + p - sub) % p;
        }
    }
    prod.truncate(e);
    prod
}

impl FieldSpec {
    /// Builds GF(q) and checks every field axiom exhaustively.
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_Q {
            return Err(if prime_power(q).is_some() {
                Error::Unsupported(q)
            } else {
                Error::NotAPrimePower(q)
            });
        }
        let (p, e) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        let modulus = if e > 1 {
            Some(conway_modulus(q).ok_or(Error::Unsupported(q))?.to_vec())
        } else {
            None
        };
        for a in 0..q {
            let ca = to_coeffs(a, p, e);
            for b in 0..q {
                let cb = to_coeffs(b, p, e);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_coeffs(&sum, p) as Elem;
                let prod = match &modulus {
                    Some(m) => from_coeffs(&poly_mul_mod(&ca, &cb, m, p), p),
                    None => (a * b) % p,
                };
                mul[(a * q + b) as usize] = prod as Elem;
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).expect("additive inverse") as Elem;
            if a > 0 {
                // an irreducible modulus guarantees this exists
                inv[a] = (1..qs)
                    .find(|&b| mul[a * qs + b] == 1)
                    .ok_or(Error::NotAPrimePower(q))? as Elem;
            }
        }
        let f = FieldSpec {
            t: Arc::new(Tables { q, p, e, add, mul, neg, inv, modulus }),
        };
        debug_assert!(f.check_axioms());
        Ok(f)
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.t.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.t.e
    }

    /// Coefficients of the modulus (constant term first), `None` for prime fields.
    pub fn modulus_poly(&self) -> Option<&[u8]> {
        self.t.modulus.as_deref()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.t.add[a as usize * self.t.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.t.mul[a as usize * self.t.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.t.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.t.inv[a as usize])
    }

    /// Inverse for callers that already know `a != 0`.
    #[inline]
    pub(crate) fn inv_nz(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        self.t.inv[a as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut exp: u32) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Checks that `a` is a valid element code.
    pub fn elem(&self, a: u32) -> Result<Elem> {
        if a < self.t.q {
            Ok(a as Elem)
        } else {
            Err(Error::ElementOutOfRange(a, self.t.q))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.t.q as Elem
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.t.q as Elem
    }

    /// Exhaustive check of the field axioms over all pairs and triples.
    pub fn check_axioms(&self) -> bool {
        let els: Vec<Elem> = self.elements().collect();
        for &a in &els {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.add(a, self.neg(a)) != 0 {
                return false;
            }
            if a != 0 && self.mul(a, self.t.inv[a as usize]) != 1 {
                return false;
            }
            for &b in &els {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
                if a != 0 && b != 0 && self.mul(a, b) == 0 {
                    return false;
                }
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Shorthand for [`FieldSpec::new`].
pub fn field_new(q: u32) -> Result<FieldSpec> {
    FieldSpec::new(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

    #[test]
    fn construction_and_errors() {
        let f2 = field_new(2).unwrap();
        assert_eq!((f2.q(), f2.characteristic(), f2.degree()), (2, 2, 1));
        let f4 = field_new(4).unwrap();
        assert_eq!(f4.modulus_poly(), Some(&[1u8, 1, 1][..]));
        assert_eq!(field_new(6).unwrap_err(), Error::NotAPrimePower(6));
        assert_eq!(field_new(1).unwrap_err(), Error::NotAPrimePower(1));
        assert_eq!(field_new(17).unwrap_err(), Error::Unsupported(17));
        assert_eq!(field_new(32).unwrap_err(), Error::Unsupported(32));
        assert_eq!(field_new(18).unwrap_err(), Error::NotAPrimePower(18));
    }

    #[test]
    fn small_arithmetic() {
        let f2 = field_new(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f3 = field_new(3).unwrap();
        assert_eq!(f3.inv(2).unwrap(), 2);
        let f4 = field_new(4).unwrap();
        // x * x = x + 1 under x^2 + x + 1
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.div(1, 0), Err(Error::DivisionByZero));
        assert_eq!(f4.inv(0), Err(Error::DivisionByZero));
        let f9 = field_new(9).unwrap();
        // x^2 = -2x - 2 = x + 1 over GF(3): code 1 + 1*3 = 4
        assert_eq!(f9.mul(3, 3), 4);
    }

    #[test]
    fn axioms_every_supported_field() {
        for q in SUPPORTED {
            let f = field_new(q).unwrap();
            assert!(f.check_axioms(), "GF({q})");
            for a in f.nonzero() {
                let ai = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ai), 1);
                assert_eq!(f.inv(ai).unwrap(), a);
            }
            // multiplicative group is cyclic of order q-1
            for a in f.nonzero() {
                assert_eq!(f.pow(a, q - 1), 1);
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for q in SUPPORTED {
            let f = field_new(q).unwrap();
            let p = f.characteristic();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                }
            }
        }
    }

    #[test]
    fn prime_field_encoding_is_residue() {
        let f7 = field_new(7).unwrap();
        for a in 0..7u8 {
            for b in 0..7u8 {
                assert_eq!(f7.add(a, b) as u32, (a as u32 + b as u32) % 7);
                assert_eq!(f7.mul(a, b) as u32, (a as u32 * b as u32) % 7);
            }
        }
        assert_eq!(f7.sub(2, 5), 4);
        assert!(f7.elem(7).is_err());
    }
}
