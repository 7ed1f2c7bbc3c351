use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};

use super::field::{Elem, FieldContext};
use crate::error::{Error, Result};

/// Slice-level polynomial arithmetic. Polynomials are coefficient vectors,
/// lowest degree first, with no trailing zeros (the empty vector is zero).
pub(crate) mod kernel {
    use super::*;

    pub fn trim(v: &mut Vec<Elem>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn add(ctx: &FieldContext, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, &s) in out.iter_mut().zip(short) {
            *o = ctx.add(*o, s);
        }
        trim(&mut out);
        out
    }

    pub fn neg(ctx: &FieldContext, a: &[Elem]) -> Vec<Elem> {
        a.iter().map(|&c| ctx.neg(c)).collect()
    }

    pub fn scale(ctx: &FieldContext, a: &mut [Elem], c: Elem) {
        for x in a.iter_mut() {
            *x = ctx.mul(*x, c);
        }
    }

    pub fn mul(ctx: &FieldContext, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(ai, bj));
            }
        }
        trim(&mut out);
        out
    }

    /// Reduces `a` modulo nonzero `b` in place, optionally collecting the
    /// quotient.
    pub fn rem_in_place(
        ctx: &FieldContext,
        a: &mut Vec<Elem>,
        b: &[Elem],
        mut quotient: Option<&mut Vec<Elem>>,
    ) {
        let db = b.len() - 1;
        let lead_inv = ctx.inv(b[db]).expect("divisor has a nonzero leading coefficient");
        if let Some(q) = quotient.as_deref_mut() {
            q.clear();
            q.resize(a.len().saturating_sub(db), 0);
        }
        while a.len() > db {
            let top = a.len() - 1;
            let c = ctx.mul(a[top], lead_inv);
            if c != 0 {
                let shift = top - db;
                for (i, &bi) in b[..db].iter().enumerate() {
                    a[shift + i] = ctx.sub(a[shift + i], ctx.mul(c, bi));
                }
                if let Some(q) = quotient.as_deref_mut() {
                    q[shift] = c;
                }
            }
            a.pop();
        }
        trim(a);
    }

    pub fn make_monic(ctx: &FieldContext, a: &mut [Elem]) {
        if let Some(&lead) = a.last() {
            let inv = ctx.inv(lead).expect("trimmed polynomial");
            scale(ctx, a, inv);
        }
    }

    /// Monic gcd; consumes both buffers.
    pub fn gcd(ctx: &FieldContext, mut a: Vec<Elem>, mut b: Vec<Elem>) -> Vec<Elem> {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            rem_in_place(ctx, &mut a, &b, None);
            std::mem::swap(&mut a, &mut b);
        }
        make_monic(ctx, &mut a);
        a
    }

    pub fn mulmod(ctx: &FieldContext, a: &[Elem], b: &[Elem], m: &[Elem]) -> Vec<Elem> {
        let mut prod = mul(ctx, a, b);
        rem_in_place(ctx, &mut prod, m, None);
        prod
    }
}

/// A polynomial over a [`FieldContext`], in canonical form (no zero leading
/// coefficient).
#[derive(Clone)]
pub struct FieldPoly {
    ctx: Arc<FieldContext>,
    coeffs: Vec<Elem>,
}

impl PartialEq for FieldPoly {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldPoly {}

impl FieldPoly {
    /// Builds a polynomial from coefficients, lowest degree first. Entries
    /// must be valid encodings in `ctx`.
    pub fn new(ctx: &Arc<FieldContext>, mut coeffs: Vec<Elem>) -> Self {
        assert!(coeffs.iter().all(|&c| ctx.is_element(c)), "coefficient outside the field");
        kernel::trim(&mut coeffs);
        FieldPoly { ctx: Arc::clone(ctx), coeffs }
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        Self::new(ctx, Vec::new())
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::new(ctx, vec![1])
    }

    /// The indeterminate `x`.
    pub fn x(ctx: &Arc<FieldContext>) -> Self {
        Self::new(ctx, vec![0, 1])
    }

    pub fn monomial(ctx: &Arc<FieldContext>, c: Elem, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(ctx, coeffs)
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(self.ctx.one())
    }

    /// `N(f) = q^deg f`; `None` for the zero polynomial.
    pub fn norm(&self) -> Option<BigInt> {
        self.degree().map(|d| self.ctx.prime_power().pow(d))
    }

    pub fn eval(&self, a: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.ctx.add(self.ctx.mul(acc, a), c))
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        kernel::make_monic(&self.ctx, &mut coeffs);
        FieldPoly { ctx: Arc::clone(&self.ctx), coeffs }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::MixedContext)
        }
    }

    fn wrap(&self, coeffs: Vec<Elem>) -> Self {
        FieldPoly { ctx: Arc::clone(&self.ctx), coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(kernel::add(&self.ctx, &self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let negated = kernel::neg(&self.ctx, &other.coeffs);
        Ok(self.wrap(kernel::add(&self.ctx, &self.coeffs, &negated)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(kernel::mul(&self.ctx, &self.coeffs, &other.coeffs)))
    }

    /// `(quotient, remainder)` with `self = quotient * divisor + remainder`
    /// and `deg remainder < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = Vec::new();
        kernel::rem_in_place(&self.ctx, &mut rem, &divisor.coeffs, Some(&mut quot));
        kernel::trim(&mut quot);
        Ok((self.wrap(quot), self.wrap(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.coeffs.clone();
        kernel::rem_in_place(&self.ctx, &mut rem, &divisor.coeffs, None);
        Ok(self.wrap(rem))
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(kernel::gcd(&self.ctx, self.coeffs.clone(), other.coeffs.clone())))
    }

    /// `self^exponent mod modulus` by left-to-right square and multiply,
    /// reducing after every step.
    pub fn powmod(&self, exponent: &BigUint, modulus: &Self) -> Result<Self> {
        self.same_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = &*self.ctx;
        let m = &modulus.coeffs;
        let mut base = self.coeffs.clone();
        kernel::rem_in_place(ctx, &mut base, m, None);
        let mut acc = vec![1];
        kernel::rem_in_place(ctx, &mut acc, m, None);
        for i in (0..exponent.bits()).rev() {
            acc = kernel::mulmod(ctx, &acc, &acc, m);
            if exponent.bit(i) {
                acc = kernel::mulmod(ctx, &acc, &base, m);
            }
        }
        Ok(self.wrap(acc))
    }
}

impl fmt::Debug for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldPoly(F_{}; {})", self.ctx.order(), self)
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::build_field;
    use rand::{Rng, SeedableRng};

    fn field(p: u64, e: u32) -> Arc<FieldContext> {
        Arc::new(build_field(p, e).unwrap())
    }

    #[test]
    fn square_in_characteristic_two() {
        let f2 = field(2, 1);
        let x1 = FieldPoly::new(&f2, vec![1, 1]);
        assert_eq!(x1.mul(&x1).unwrap(), FieldPoly::new(&f2, vec![1, 0, 1]));
    }

    #[test]
    fn remainder_theorem_over_f3() {
        let f3 = field(3, 1);
        let a = FieldPoly::new(&f3, vec![1, 2, 0, 1]);
        let b = FieldPoly::new(&f3, vec![1, 1]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(r, FieldPoly::new(&f3, vec![1]));
        assert_eq!(r.coeffs()[0], a.eval(2));
        assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
    }

    #[test]
    fn gcd_with_zero_is_monic_normal_form() {
        let f5 = field(5, 1);
        let f = FieldPoly::new(&f5, vec![1, 3, 2]);
        let g = f.gcd(&FieldPoly::zero(&f5)).unwrap();
        assert!(g.is_monic());
        assert_eq!(g, f.monic());
        assert_eq!(g.coeffs(), &[3, 4, 1]);
    }

    #[test]
    fn errors() {
        let (a, b) = (field(2, 1), field(2, 1));
        let fa = FieldPoly::x(&a);
        let fb = FieldPoly::x(&b);
        assert_eq!(fa.add(&fb).unwrap_err(), Error::MixedContext);
        assert_eq!(fa.divmod(&FieldPoly::zero(&a)).unwrap_err(), Error::DivisionByZero);
        assert_eq!(
            fa.powmod(&BigUint::from(3u8), &FieldPoly::zero(&a)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn zero_polynomial_conventions() {
        let f = field(3, 2);
        let z = FieldPoly::new(&f, vec![0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z.norm(), None);
        assert_eq!(FieldPoly::monomial(&f, 1, 3).norm(), Some(BigInt::from(729)));
        assert_eq!(format!("{}", FieldPoly::new(&f, vec![1, 0, 4, 1])), "x^3 + 4*x^2 + 1");
    }

    fn random_poly(rng: &mut impl Rng, ctx: &Arc<FieldContext>, deg: usize) -> FieldPoly {
        let q = ctx.order() as u32;
        FieldPoly::new(ctx, (0..=deg).map(|_| rng.gen_range(0..q)).collect())
    }

    #[test]
    fn ring_laws_on_random_samples() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for (p, e) in [(2, 1), (3, 1), (2, 3), (3, 2), (7, 1), (2, 10)] {
            let ctx = field(p, e);
            for _ in 0..50 {
                let deg = rng.gen_range(0..8);
                let a = random_poly(&mut rng, &ctx, deg);
                let deg = rng.gen_range(0..6);
                let b = random_poly(&mut rng, &ctx, deg);
                let deg = rng.gen_range(0..5);
                let c = random_poly(&mut rng, &ctx, deg);
                assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
                assert_eq!(
                    a.mul(&b.add(&c).unwrap()).unwrap(),
                    a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
                );
                if !b.is_zero() {
                    let (q, r) = a.divmod(&b).unwrap();
                    assert!(r.degree() < b.degree());
                    assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
                }
                let g = a.gcd(&b).unwrap();
                if !g.is_zero() {
                    assert!(g.is_monic());
                    assert!(a.rem(&g).unwrap().is_zero());
                    assert!(b.rem(&g).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let ctx = field(3, 2);
        let m = random_poly(&mut rng, &ctx, 5);
        let base = random_poly(&mut rng, &ctx, 7);
        let mut acc = FieldPoly::one(&ctx).rem(&m).unwrap();
        for k in 0..40u32 {
            assert_eq!(base.powmod(&BigUint::from(k), &m).unwrap(), acc, "k = {k}");
            acc = acc.mul(&base).unwrap().rem(&m).unwrap();
        }
    }
}
