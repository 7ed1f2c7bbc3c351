use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};
use crate::prime_power::PrimePower;

/// A field element, encoded as `sum d_i p^i` for the residue `sum d_i y^i`
/// modulo the defining polynomial. In a prime field this is the residue
/// itself.
pub type Elem = u32;

/// Largest field the oracle constructs.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

// Below this order, addition and multiplication are full lookup tables.
const TABLE_ORDER: u64 = 256;

#[derive(Debug)]
enum Ops {
    Table { add: Vec<Elem>, mul: Vec<Elem> },
    Log { exp: Vec<Elem>, log: Vec<u32> },
}

/// The finite field `F_q`, realised as `F_p[y]/(g)` for the first monic
/// irreducible `g` of degree `e` in lexicographic order of its coefficient
/// vector `(g_0, ..., g_{e-1})`.
///
/// Immutable once built; share it freely between threads.
#[derive(Debug)]
pub struct FieldContext {
    q: PrimePower,
    modulus: Option<Vec<u32>>,
    ops: Ops,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// Builds `F_{p^e}`.
pub fn build_field(p: u64, e: u32) -> Result<FieldContext> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::ZeroArgument);
    }
    match p.checked_pow(e) {
        Some(q) if q <= MAX_FIELD_ORDER => {}
        _ => return Err(Error::FieldTooLarge { p, e }),
    }
    let q = PrimePower::from_parts(p, e)?;
    let modulus = (e >= 2).then(|| first_irreducible(p as u32, e as usize));
    let raw = Raw { p: p as u32, e: e as usize, modulus: modulus.clone() };
    let order = q.q() as usize;

    let neg: Vec<Elem> = (0..order as Elem).map(|a| raw.neg(a)).collect();
    let ops = if q.q() <= TABLE_ORDER {
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                add[a * order + b] = raw.add(a as Elem, b as Elem);
                mul[a * order + b] = raw.mul(a as Elem, b as Elem);
            }
        }
        Ops::Table { add, mul }
    } else {
        let g = primitive_element(&raw, q.q());
        let mut exp = vec![0; 2 * (order - 1)];
        let mut log = vec![0; order];
        let mut x: Elem = 1;
        for i in 0..order - 1 {
            exp[i] = x;
            exp[i + order - 1] = x;
            log[x as usize] = i as u32;
            x = raw.mul(x, g);
        }
        Ops::Log { exp, log }
    };
    let mut ctx = FieldContext { q, modulus, ops, neg, inv: Vec::new() };
    ctx.inv = (0..order as Elem).map(|a| ctx.slow_inv(a)).collect();
    Ok(ctx)
}

impl FieldContext {
    pub fn prime_power(&self) -> PrimePower {
        self.q
    }

    pub fn order(&self) -> u64 {
        self.q.q()
    }

    pub fn characteristic(&self) -> u64 {
        self.q.characteristic()
    }

    /// Defining polynomial over `F_p`, lowest degree first; `None` for prime
    /// fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.ops {
            Ops::Table { add, .. } => add[a as usize * self.q.q() as usize + b as usize],
            Ops::Log { .. } => self.digit_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.ops {
            Ops::Table { mul, .. } => mul[a as usize * self.q.q() as usize + b as usize],
            Ops::Log { exp, log } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[(log[a as usize] + log[b as usize]) as usize]
                }
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Row of the multiplication table for `c`, when tables are in use.
    #[inline]
    pub(crate) fn mul_row(&self, c: Elem) -> Option<&[Elem]> {
        match &self.ops {
            Ops::Table { mul, .. } => {
                let q = self.q.q() as usize;
                Some(&mul[c as usize * q..(c as usize + 1) * q])
            }
            Ops::Log { .. } => None,
        }
    }

    /// Whether addition is bitwise XOR of the encodings.
    #[inline]
    pub(crate) fn add_is_xor(&self) -> bool {
        self.q.characteristic() == 2
    }

    pub fn is_element(&self, a: Elem) -> bool {
        (a as u64) < self.order()
    }

    /// Coordinates of `a` over `F_p`, lowest power of `y` first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let p = self.q.characteristic() as u32;
        let mut a = a;
        (0..self.q.exponent())
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        let p = self.q.characteristic() as u32;
        digits.iter().rev().fold(0, |acc, &d| acc * p + d % p)
    }

    fn digit_add(&self, a: Elem, b: Elem) -> Elem {
        if self.add_is_xor() {
            return a ^ b;
        }
        let p = self.q.characteristic() as u32;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn slow_inv(&self, a: Elem) -> Elem {
        if a == 0 {
            return 0;
        }
        // a^(q-2)
        let mut acc = 1;
        let mut base = a;
        let mut k = self.order() - 2;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }
}

// Arithmetic on encoded elements straight from the definition, used only
// while building tables.
struct Raw {
    p: u32,
    e: usize,
    modulus: Option<Vec<u32>>,
}

impl Raw {
    fn decode(&self, mut a: Elem) -> Vec<u32> {
        (0..self.e)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u32]) -> Elem {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        let (da, db) = (self.decode(a), self.decode(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&s)
    }

    fn neg(&self, a: Elem) -> Elem {
        let d: Vec<u32> = self.decode(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.encode(&d)
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p as u64;
        let (da, db) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u64; 2 * self.e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        if let Some(g) = &self.modulus {
            for top in (self.e..prod.len()).rev() {
                let c = prod[top];
                if c == 0 {
                    continue;
                }
                prod[top] = 0;
                for (i, &gi) in g[..self.e].iter().enumerate() {
                    let t = top - self.e + i;
                    prod[t] = (prod[t] + (p - c) * gi as u64) % p;
                }
            }
        }
        let digits: Vec<u32> = prod[..self.e].iter().map(|&x| x as u32).collect();
        self.encode(&digits)
    }
}

fn primitive_element(raw: &Raw, q: u64) -> Elem {
    let factors = prime_factors(q - 1);
    let pow = |mut base: Elem, mut k: u64| {
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = raw.mul(acc, base);
            }
            base = raw.mul(base, base);
            k >>= 1;
        }
        acc
    };
    (2..q as Elem)
        .find(|&g| factors.iter().all(|&r| pow(g, (q - 1) / r) != 1))
        .expect("the multiplicative group of a finite field is cyclic")
}

/// Remainder of `a` modulo monic `b` over `F_p`.
fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = r.pop().unwrap();
        if c != 0 {
            let shift = r.len() - db;
            for (i, &bi) in b[..db].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * bi % p) % p;
            }
        }
    }
    r
}

fn fp_is_irreducible(g: &[u32], p: u32) -> bool {
    let n = g.len() - 1;
    for d in 1..=n / 2 {
        let mut divisor = vec![0u32; d + 1];
        divisor[d] = 1;
        for t in 0..(p as u64).pow(d as u32) {
            let mut t = t;
            for c in divisor[..d].iter_mut() {
                *c = (t % p as u64) as u32;
                t /= p as u64;
            }
            if fp_rem(g, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

// Candidates (g_0, ..., g_{e-1}) are visited with g_0 as the most
// significant position.
fn first_irreducible(p: u32, e: usize) -> Vec<u32> {
    let total = (p as u64).pow(e as u32);
    for t in 0..total {
        let mut g = vec![0u32; e + 1];
        g[e] = 1;
        let mut t = t;
        for i in (0..e).rev() {
            g[i] = (t % p as u64) as u32;
            t /= p as u64;
        }
        if fp_is_irreducible(&g, p) {
            return g;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn prime_field_has_no_modulus() {
        let f2 = build_field(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        assert!(f2.modulus().is_none());
        assert_eq!(f2.add(1, 1), 0);
        assert_eq!(f2.mul(1, 1), 1);
    }

    #[test]
    fn f4_uses_the_only_irreducible_quadratic() {
        let f4 = build_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), Some(&[1, 1, 1][..]));
        // y * y = y + 1
        assert_eq!(f4.mul(2, 2), 3);
    }

    /// Independent oracle for the modulus choice in small degree: a monic
    /// polynomial of degree 2 or 3 is irreducible iff it has no root.
    fn first_rootless(p: u32, e: usize) -> Vec<u32> {
        let eval = |g: &[u32], x: u32| {
            g.iter().rev().fold(0u32, |acc, &c| (acc * x + c) % p)
        };
        let mut candidates: Vec<Vec<u32>> = Vec::new();
        let total = (p as usize).pow(e as u32);
        for t in 0..total {
            let mut g = vec![0u32; e];
            let mut t = t;
            for gi in g.iter_mut() {
                *gi = (t % p as usize) as u32;
                t /= p as usize;
            }
            g.push(1);
            candidates.push(g);
        }
        candidates.sort_by(|a, b| a[..e].cmp(&b[..e]));
        candidates
            .into_iter()
            .find(|g| (0..p).all(|x| eval(g, x) != 0))
            .unwrap()
    }

    #[test]
    fn modulus_is_lexicographically_first() {
        for (p, e) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 3)] {
            let ctx = build_field(p, e).unwrap();
            assert_eq!(ctx.modulus().unwrap(), &first_rootless(p as u32, e as usize)[..], "p={p} e={e}");
        }
        assert_eq!(build_field(3, 2).unwrap().modulus(), Some(&[1, 0, 1][..]));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(build_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(build_field(2, 21).unwrap_err(), Error::FieldTooLarge { p: 2, e: 21 });
        assert_eq!(build_field(2, 0).unwrap_err(), Error::ZeroArgument);
    }

    #[test]
    fn field_axioms_on_samples() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for (p, e) in [(2, 1), (5, 1), (2, 4), (3, 2), (2, 9), (3, 6), (1009, 1), (2, 20), (1021, 2)] {
            let ctx = build_field(p, e).unwrap();
            let q = ctx.order() as u32;
            for _ in 0..100 {
                let (a, b, c) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
                assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
                assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
                assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                assert_eq!(ctx.add(a, b), ctx.add(b, a));
                assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
                assert_eq!(ctx.add(a, ctx.neg(a)), 0);
                if a != 0 {
                    assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), 1);
                }
            }
            assert_eq!(ctx.inv(0), None);
        }
    }

    #[test]
    fn digits_round_trip() {
        let ctx = build_field(3, 4).unwrap();
        for a in 0..81 {
            assert_eq!(ctx.from_digits(&ctx.digits(a)), a);
        }
    }
}
