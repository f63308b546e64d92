//! Exact coefficient arithmetic.
//!
//! A [`Scalar`] is either an element of Q(q), the field of rational functions
//! in a symbolic parameter `q` over the rationals, or an element of the
//! cyclotomic field Q(zeta_t) when `q` has been declared a primitive t-th root
//! of unity. Both are kept in a canonical form (reduced fraction, positive
//! denominator leading coefficient, residue of degree < deg Phi_t), so `==` is
//! field equality.

mod poly;
mod parse;

pub use parse::ScalarParseError;
pub use poly::{cyclotomic, ZPoly};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Whether `q` is a free parameter or a fixed primitive root of unity.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub enum CoeffMode {
    /// Symbolic `q`: scalars live in Q(q).
    Generic,
    /// `q` is a primitive t-th root of unity, t >= 2: scalars live in
    /// Q[q]/Phi_t(q).
    RootOfUnity(u32),
}

impl CoeffMode {
    pub fn root_of_unity(t: u32) -> Self {
        assert!(t >= 2, "root-of-unity order must be at least 2");
        CoeffMode::RootOfUnity(t)
    }
}

#[derive(Debug, Error)]
pub enum SpecializeError {
    #[error("denominator {denominator} vanishes at a primitive {t}-th root of unity (divisible by the cyclotomic factor {factor})")]
    Pole {
        t: u32,
        denominator: String,
        factor: String,
    },
}

/// Exact scalar: `num/den` with integer-coefficient polynomials.
///
/// In `RootOfUnity(t)` mode the denominator is a positive integer and the
/// numerator has degree below deg Phi_t.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Scalar {
    mode: CoeffMode,
    num: ZPoly,
    den: ZPoly,
}

impl Scalar {
    fn make(mode: CoeffMode, num: ZPoly, den: ZPoly) -> Self {
        let mut s = Scalar { mode, num, den };
        s.normalize();
        s
    }

    pub fn zero(mode: CoeffMode) -> Self {
        Scalar {
            mode,
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one(mode: CoeffMode) -> Self {
        Scalar {
            mode,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn int(n: i64, mode: CoeffMode) -> Self {
        Scalar::make(mode, ZPoly::from_int(n), ZPoly::one())
    }

    /// The image of the parameter `q`.
    pub fn q(mode: CoeffMode) -> Self {
        Scalar::make(mode, ZPoly::var(), ZPoly::one())
    }

    pub fn from_fraction(num: ZPoly, den: ZPoly, mode: CoeffMode) -> Self {
        assert!(!den.is_zero(), "scalar denominator must be nonzero");
        Scalar::make(mode, num, den)
    }

    pub fn mode(&self) -> CoeffMode {
        self.mode
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the canonical numerator's leading coefficient is negative;
    /// used only to pick a rendering with the sign out front.
    pub fn is_display_negative(&self) -> bool {
        self.num.leading().map_or(false, |c| c.is_negative())
    }

    fn assert_same_mode(&self, other: &Self) {
        assert_eq!(
            self.mode, other.mode,
            "scalar arithmetic across coefficient modes"
        );
    }

    fn normalize(&mut self) {
        if let CoeffMode::RootOfUnity(t) = self.mode {
            let phi = cyclotomic(t);
            self.num = self.num.rem_monic(&phi);
            debug_assert!(
                self.den.is_constant(),
                "root-of-unity denominators must be integers"
            );
        }
        if self.num.is_zero() {
            self.den = ZPoly::one();
            return;
        }
        let g = ZPoly::gcd(&self.num, &self.den);
        if !g.is_one() {
            self.num = self.num.exact_div(&g);
            self.den = self.den.exact_div(&g);
        }
        if self.den.leading().map_or(false, |c| c.is_negative()) {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_mode(other);
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::make(self.mode, num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Scalar {
            mode: self.mode,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_mode(other);
        Scalar::make(
            self.mode,
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        )
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero scalar");
        match self.mode {
            CoeffMode::Generic => Scalar::make(self.mode, self.den.clone(), self.num.clone()),
            CoeffMode::RootOfUnity(t) => {
                let (inv_num, inv_den) = invert_mod_cyclotomic(&self.num, t);
                // (num/den)^-1 = den * num^-1.
                Scalar::make(self.mode, inv_num.mul(&self.den), inv_den)
            }
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = Scalar::one(self.mode);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative order, when finite.
    ///
    /// In `Generic` mode the only roots of unity in Q(q) are 1 and -1. In
    /// `RootOfUnity(t)` mode every root of unity divides lcm(2, t), so the
    /// search space is finite. Panics on zero.
    pub fn root_order(&self) -> Option<u64> {
        assert!(!self.is_zero(), "root_order of zero scalar");
        if self.is_one() {
            return Some(1);
        }
        match self.mode {
            CoeffMode::Generic => {
                if *self == Scalar::int(-1, self.mode) {
                    Some(2)
                } else {
                    None
                }
            }
            CoeffMode::RootOfUnity(t) => {
                let n = if t % 2 == 0 { t as u64 } else { 2 * t as u64 };
                let mut acc = self.clone();
                for k in 1..=n {
                    if acc.is_one() {
                        return Some(k);
                    }
                    acc = acc.mul(self);
                }
                None
            }
        }
    }

    /// Image under `q -> zeta_t`; only defined on `Generic` scalars.
    pub fn specialize(&self, t: u32) -> Result<Scalar, SpecializeError> {
        assert_eq!(self.mode, CoeffMode::Generic, "specialize expects a generic scalar");
        assert!(t >= 2, "root-of-unity order must be at least 2");
        let mode = CoeffMode::RootOfUnity(t);
        let phi = cyclotomic(t);
        let den_res = self.den.rem_monic(&phi);
        if den_res.is_zero() {
            return Err(SpecializeError::Pole {
                t,
                denominator: format!("{}", render_poly(&self.den)),
                factor: format!("{}", render_poly(&phi)),
            });
        }
        let num = Scalar::make(mode, self.num.clone(), ZPoly::one());
        let den = Scalar::make(mode, den_res, ZPoly::one());
        Ok(num.div(&den))
    }

    /// Parse the canonical text form; see the module docs for the grammar.
    pub fn parse(text: &str, mode: CoeffMode) -> Result<Scalar, ScalarParseError> {
        parse::parse_scalar(text, mode)
    }
}

/// Gaussian binomial coefficient `[m over j]_q` by the q-Pascal recurrence.
///
/// Panics when `j > m`.
pub fn q_binomial(m: u32, j: u32, q: &Scalar) -> Scalar {
    assert!(j <= m, "q_binomial requires j <= m (got j={j}, m={m})");
    let mode = q.mode();
    let one = Scalar::one(mode);
    // Row-by-row q-Pascal: [n over k] = [n-1 over k-1] + q^k [n-1 over k].
    let mut row = vec![one.clone()];
    for _ in 1..=m {
        let n = row.len();
        let mut next = Vec::with_capacity(n + 1);
        next.push(one.clone());
        for k in 1..n {
            next.push(row[k - 1].add(&q.pow(k as i64).mul(&row[k])));
        }
        next.push(one.clone());
        row = next;
    }
    row[j as usize].clone()
}

/// Extended Euclid in Q[q] against Phi_t: returns `(p, d)` with
/// `a * p = d  (mod Phi_t)` for a positive integer `d`.
fn invert_mod_cyclotomic(a: &ZPoly, t: u32) -> (ZPoly, ZPoly) {
    let phi = cyclotomic(t);
    let to_rat = |p: &ZPoly| -> Vec<BigRational> {
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let trim = |mut v: Vec<BigRational>| -> Vec<BigRational> {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let mut r0 = trim(to_rat(&phi));
    let mut r1 = trim(to_rat(a));
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    assert!(!r1.is_empty(), "inverse of zero residue");
    while r1.len() > 1 {
        // Divide r0 by r1, tracking the Bezout coefficient of `a` only.
        let mut rem = r0.clone();
        let mut q_acc: Vec<BigRational> = vec![BigRational::zero(); rem.len()];
        while rem.len() >= r1.len() && !rem.is_empty() {
            let k = rem.len() - r1.len();
            let c = rem.last().unwrap() / r1.last().unwrap();
            for (i, rc) in r1.iter().enumerate() {
                let adj = rc * &c;
                rem[k + i] -= adj;
            }
            rem = trim(rem);
            q_acc[k] += c;
        }
        let q_acc = trim(q_acc);
        // s2 = s0 - q * s1
        let prod_len = if q_acc.is_empty() || s1.is_empty() {
            0
        } else {
            q_acc.len() + s1.len() - 1
        };
        let mut s2 = vec![BigRational::zero(); s0.len().max(prod_len)];
        for (i, c) in s0.iter().enumerate() {
            s2[i] += c;
        }
        for (i, qc) in q_acc.iter().enumerate() {
            for (j, sc) in s1.iter().enumerate() {
                let adj = qc * sc;
                s2[i + j] -= adj;
            }
        }
        r0 = r1;
        s0 = s1;
        r1 = trim(rem);
        s1 = trim(s2);
    }
    // r1 is a nonzero rational constant c: a * s1 = c (mod Phi_t).
    let c = r1.pop().expect("unit gcd against an irreducible modulus");
    let scaled: Vec<BigRational> = s1.iter().map(|s| s / &c).collect();
    let mut denom = BigInt::one();
    for s in &scaled {
        denom = denom.lcm(s.denom());
    }
    let num = ZPoly::from_coeffs(
        scaled
            .iter()
            .map(|s| s.numer() * (&denom / s.denom()))
            .collect(),
    );
    (num, ZPoly::from_bigint(denom))
}

fn render_poly(p: &ZPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for k in (0..p.coeffs().len()).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push('-');
        } else {
            out.push('+');
        }
        let unit = mag.is_one();
        if k == 0 {
            out.push_str(&mag.to_string());
        } else {
            if !unit {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push('q');
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
        }
    }
    out
}

fn poly_needs_parens(p: &ZPoly) -> bool {
    let nonzero = p.coeffs().iter().filter(|c| !c.is_zero()).count();
    nonzero > 1
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", render_poly(&self.num));
        }
        let num = if poly_needs_parens(&self.num) {
            format!("({})", render_poly(&self.num))
        } else {
            render_poly(&self.num)
        };
        let den = if poly_needs_parens(&self.den) {
            format!("({})", render_poly(&self.den))
        } else {
            render_poly(&self.den)
        };
        write!(f, "{num}/{den}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const G: CoeffMode = CoeffMode::Generic;

    fn q() -> Scalar {
        Scalar::q(G)
    }

    fn random_scalar(rng: &mut StdRng, mode: CoeffMode) -> Scalar {
        let mut num = ZPoly::zero();
        for k in 0..rng.gen_range(1..4usize) {
            let c: i64 = rng.gen_range(-5..=5);
            num = num.add(&ZPoly::monomial(BigInt::from(c), k));
        }
        let mut den = ZPoly::zero();
        while den.is_zero() {
            den = ZPoly::zero();
            for k in 0..rng.gen_range(1..3usize) {
                let c: i64 = rng.gen_range(-4..=4);
                den = den.add(&ZPoly::monomial(BigInt::from(c), k));
            }
        }
        match mode {
            CoeffMode::Generic => Scalar::from_fraction(num, den, mode),
            CoeffMode::RootOfUnity(_) => {
                // Keep denominators integral in root mode.
                let d: i64 = *[1, 2, 3, 5].get(rng.gen_range(0..4)).unwrap();
                Scalar::from_fraction(num, ZPoly::from_int(d), mode)
            }
        }
    }

    #[test]
    fn q_binomial_small_cases() {
        assert_eq!(q_binomial(2, 1, &q()), Scalar::int(1, G).add(&q()));
        assert_eq!(q_binomial(5, 0, &q()), Scalar::one(G));
        // [4 over 2] = 1 + q + 2q^2 + q^3 + q^4
        let expected = Scalar::from_fraction(
            ZPoly::from_coeffs([1i64, 1, 2, 1, 1].iter().map(|&c| BigInt::from(c)).collect()),
            ZPoly::one(),
            G,
        );
        assert_eq!(q_binomial(4, 2, &q()), expected);
    }

    #[test]
    fn q_binomial_total_degree() {
        for m in 0..=8u32 {
            for j in 0..=m {
                let b = q_binomial(m, j, &q());
                assert!(b.denominator().is_one());
                assert_eq!(b.numerator().degree(), Some((j * (m - j)) as usize));
            }
        }
    }

    #[test]
    #[should_panic]
    fn q_binomial_rejects_j_above_m() {
        q_binomial(2, 3, &q());
    }

    #[test]
    fn q_pascal_identity() {
        for m in 1..=12u32 {
            for j in 1..=m {
                let lhs = q_binomial(m, j, &q());
                let rhs = if j == m {
                    q_binomial(m - 1, j - 1, &q())
                } else {
                    q_binomial(m - 1, j - 1, &q())
                        .add(&q().pow(j as i64).mul(&q_binomial(m - 1, j, &q())))
                };
                assert_eq!(lhs, rhs, "q-Pascal fails at m={m}, j={j}");
            }
        }
    }

    #[test]
    fn q_binomial_vanishes_at_roots() {
        for t in [2u32, 3, 5, 7] {
            let mode = CoeffMode::RootOfUnity(t);
            let zeta = Scalar::q(mode);
            for j in 1..t {
                assert!(
                    q_binomial(t, j, &zeta).is_zero(),
                    "[{t} over {j}] should vanish at a primitive {t}-th root"
                );
            }
            assert!(q_binomial(t, 0, &zeta).is_one());
            assert!(q_binomial(t, t, &zeta).is_one());
        }
    }

    #[test]
    fn root_orders() {
        assert_eq!(q().root_order(), None);
        assert_eq!(Scalar::int(-1, G).root_order(), Some(2));
        assert_eq!(Scalar::int(1, G).root_order(), Some(1));
        assert_eq!(Scalar::int(2, G).root_order(), None);
        let mode = CoeffMode::RootOfUnity(3);
        assert_eq!(Scalar::q(mode).root_order(), Some(3));
        assert_eq!(Scalar::q(mode).neg().root_order(), Some(6));
        assert_eq!(Scalar::q(mode).pow(3).root_order(), Some(1));
        assert_eq!(Scalar::int(2, mode).root_order(), None);
        let m4 = CoeffMode::RootOfUnity(4);
        assert_eq!(Scalar::q(m4).root_order(), Some(4));
        assert_eq!(Scalar::q(m4).pow(2).root_order(), Some(2));
    }

    #[test]
    fn specialize_examples() {
        // (1+q) at t=2 is zero.
        let s = Scalar::int(1, G).add(&q());
        assert!(s.specialize(2).unwrap().is_zero());
        // q^3 at t=3 is one.
        assert!(q().pow(3).specialize(3).unwrap().is_one());
        // 1/(1-q) at t=3 is (2+zeta)/3.
        let s = Scalar::one(G).div(&Scalar::int(1, G).sub(&q()));
        let got = s.specialize(3).unwrap();
        let mode = CoeffMode::RootOfUnity(3);
        let expected = Scalar::int(2, mode)
            .add(&Scalar::q(mode))
            .div(&Scalar::int(3, mode));
        assert_eq!(got, expected);
        assert_eq!(format!("{got}"), "(q+2)/3");
    }

    #[test]
    fn specialize_reports_poles() {
        // 1/(1+q+q^2) has a pole at a primitive cube root.
        let den = Scalar::int(1, G).add(&q()).add(&q().pow(2));
        let s = Scalar::one(G).div(&den);
        let err = s.specialize(3).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("q^2+q+1"), "message should name the factor: {msg}");
        assert!(s.specialize(2).is_ok());
    }

    #[test]
    fn field_axioms_randomized() {
        let mut rng = StdRng::seed_from_u64(7);
        for mode in [G, CoeffMode::RootOfUnity(3), CoeffMode::RootOfUnity(4)] {
            for _ in 0..400 {
                let a = random_scalar(&mut rng, mode);
                let b = random_scalar(&mut rng, mode);
                let c = random_scalar(&mut rng, mode);
                assert_eq!(a.add(&b), b.add(&a));
                assert_eq!(a.mul(&b), b.mul(&a));
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                if !a.is_zero() {
                    assert!(a.mul(&a.inv()).is_one());
                }
                assert_eq!(a.sub(&a), Scalar::zero(mode));
            }
        }
    }

    #[test]
    fn specialize_is_ring_homomorphism() {
        let mut rng = StdRng::seed_from_u64(11);
        let t = 5;
        let phi = cyclotomic(t);
        for _ in 0..300 {
            let a = random_scalar(&mut rng, G);
            let b = random_scalar(&mut rng, G);
            // Skip pole cases.
            if a.denominator().rem_monic(&phi).is_zero()
                || b.denominator().rem_monic(&phi).is_zero()
            {
                continue;
            }
            let sum = a.add(&b);
            let prod = a.mul(&b);
            if sum.denominator().rem_monic(&phi).is_zero()
                || prod.denominator().rem_monic(&phi).is_zero()
            {
                continue;
            }
            let sa = a.specialize(t).unwrap();
            let sb = b.specialize(t).unwrap();
            assert_eq!(sum.specialize(t).unwrap(), sa.add(&sb));
            assert_eq!(prod.specialize(t).unwrap(), sa.mul(&sb));
        }
    }

    #[test]
    fn display_examples() {
        assert_eq!(format!("{}", q()), "q");
        assert_eq!(format!("{}", q().inv()), "1/q");
        let s = q().pow(2).add(&Scalar::one(G)).div(&q().sub(&Scalar::one(G)));
        assert_eq!(format!("{s}"), "(q^2+1)/(q-1)");
        assert_eq!(format!("{}", Scalar::int(-3, G).mul(&q())), "-3*q");
    }
}
