//! Dense integer polynomials in the single variable `q`.
//!
//! These are the raw material for `Scalar`: numerators and denominators of
//! elements of Q(q), and residue representatives in cyclotomic fields. The
//! representation is canonical (no trailing zero coefficients), so derived
//! equality is coefficient equality.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Polynomial in `q` with `BigInt` coefficients, `coeffs[i]` at `q^i`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::from_int(1)
    }

    /// The variable `q` itself.
    pub fn var() -> Self {
        ZPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn from_int(n: i64) -> Self {
        ZPoly::from_coeffs(vec![BigInt::from(n)])
    }

    pub fn from_bigint(n: BigInt) -> Self {
        ZPoly::from_coeffs(vec![n])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// True when the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        ZPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        ZPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(coeffs)
    }

    pub fn mul_bigint(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ZPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Non-negative gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content, keeping the sign of the leading coefficient.
    pub fn primitive(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Exact division; panics when the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return ZPoly::zero();
        }
        let dd = d.degree().unwrap();
        let nd = self.degree().expect("nonzero");
        assert!(nd >= dd, "exact_div: degree too small");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        let lead = d.leading().unwrap().clone();
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(&lead);
            assert!(r.is_zero(), "exact_div: inexact leading coefficient");
            for (i, dc) in d.coeffs.iter().enumerate() {
                let adj = dc * &qc;
                rem[k + i] -= adj;
            }
            quot[k] = qc;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "exact_div: nonzero remainder");
        ZPoly::from_coeffs(quot)
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &Self) -> Self {
        let md = m.degree().expect("modulus must be nonzero");
        assert!(m.leading().unwrap().is_one(), "modulus must be monic");
        let mut rem = self.coeffs.clone();
        while rem.len() > md {
            let top = rem.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = rem.len() - md;
            for (i, mc) in m.coeffs.iter().take(md).enumerate() {
                let adj = mc * &top;
                rem[k + i] -= adj;
            }
        }
        ZPoly::from_coeffs(rem)
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a  mod  d`, computed
    /// fraction-free.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.leading().unwrap().clone();
            // r := lead * r - top * q^(rd-dd) * d
            let shifted = ZPoly::monomial(top, rd - dd).mul(d);
            r = r.mul_bigint(&lead).sub(&shifted);
        }
        r
    }

    /// Polynomial gcd over Z, normalized to a positive leading coefficient.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.positive_leading();
        }
        if b.is_zero() {
            return a.positive_leading();
        }
        let content = a.content().gcd(&b.content());
        let mut x = a.primitive();
        let mut y = b.primitive();
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let r = x.pseudo_rem(&y).primitive();
            x = y;
            y = r;
        }
        x.positive_leading().mul_bigint(&content)
    }

    fn positive_leading(&self) -> Self {
        match self.leading() {
            Some(l) if l.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

/// The `t`-th cyclotomic polynomial, memoized.
pub fn cyclotomic(t: u32) -> ZPoly {
    assert!(t >= 1, "cyclotomic index must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, ZPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&t) {
        return p.clone();
    }
    // x^t - 1 divided by the cyclotomic polynomials of all proper divisors.
    let mut coeffs = vec![BigInt::zero(); t as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[t as usize] = BigInt::one();
    let mut phi = ZPoly::from_coeffs(coeffs);
    for d in 1..t {
        if t % d == 0 {
            phi = phi.exact_div(&cyclotomic(d));
        }
    }
    cache.lock().unwrap().insert(t, phi.clone());
    phi
}
