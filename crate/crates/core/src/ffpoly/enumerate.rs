use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::field::{Elem, FieldContext};
use super::poly::{kernel, FieldPoly};
use crate::arith::prime_factors;
use crate::error::{Error, Result};

/// All monic polynomials of degree `n`, ordered by the base-`q` integer
/// whose digits are the lower coefficients (constant term least
/// significant).
pub fn monic_polys(ctx: &Arc<FieldContext>, n: usize) -> impl Iterator<Item = FieldPoly> + '_ {
    let q = ctx.order();
    let total = q.pow(n as u32);
    (0..total).map(move |t| {
        let mut coeffs = low_coefficients(t, q, n);
        coeffs.push(1);
        FieldPoly::new(ctx, coeffs)
    })
}

fn low_coefficients(mut t: u64, q: u64, n: usize) -> Vec<Elem> {
    (0..n)
        .map(|_| {
            let d = (t % q) as Elem;
            t /= q;
            d
        })
        .collect()
}

/// Rabin's criterion specialised for repeated use at one degree.
///
/// The `q`-power map is `F_q`-linear on `F_q[x]/(f)`, so each Frobenius step
/// is a product with the matrix whose rows are `x^(iq) mod f`. Divisibility
/// checks run in increasing order of `n / l`, and any earlier return of
/// `x^(q^i)` to `x` with `i < n` settles reducibility.
pub struct RabinKernel<'a> {
    ctx: &'a FieldContext,
    n: usize,
    checkpoints: Vec<usize>,
    f: Vec<Elem>,
    frob: Vec<Elem>,
    row: Vec<Elem>,
    cur: Vec<Elem>,
    next: Vec<Elem>,
}

impl<'a> RabinKernel<'a> {
    pub fn new(ctx: &'a FieldContext, n: usize) -> Self {
        assert!(n >= 1, "degree must be positive");
        let mut checkpoints: Vec<usize> =
            prime_factors(n as u64).into_iter().map(|l| n / l as usize).collect();
        checkpoints.sort_unstable();
        RabinKernel {
            ctx,
            n,
            checkpoints,
            f: vec![0; n + 1],
            frob: vec![0; n * n],
            row: vec![0; n],
            cur: vec![0; n],
            next: vec![0; n],
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `f = x^n + low[n-1] x^(n-1) + ... + low[0]`.
    pub fn is_irreducible(&mut self, low: &[Elem]) -> bool {
        let n = self.n;
        assert_eq!(low.len(), n);
        if n == 1 {
            return true;
        }
        if low[0] == 0 {
            return false;
        }
        self.f[..n].copy_from_slice(low);
        self.f[n] = 1;
        self.build_frobenius_matrix();

        self.cur.fill(0);
        self.cur[1] = 1;
        let mut next_check = 0;
        for i in 1..=n {
            self.apply_frobenius();
            let back_to_x = self.cur[1] == 1 && self.cur.iter().enumerate().all(|(k, &c)| k == 1 || c == 0);
            if i == n {
                return back_to_x;
            }
            if back_to_x {
                return false;
            }
            if next_check < self.checkpoints.len() && self.checkpoints[next_check] == i {
                next_check += 1;
                let mut h = self.cur.clone();
                h[1] = self.ctx.sub(h[1], 1);
                let g = kernel::gcd(self.ctx, h, self.f.clone());
                if g.len() != 1 {
                    return false;
                }
            }
        }
        unreachable!()
    }

    fn build_frobenius_matrix(&mut self) {
        let ctx = self.ctx;
        let (n, q) = (self.n, ctx.order() as usize);
        self.row.fill(0);
        self.row[0] = 1;
        for exp in 0..=(n - 1) * q {
            if exp % q == 0 {
                let i = exp / q;
                self.frob[i * n..(i + 1) * n].copy_from_slice(&self.row);
            }
            // row <- row * x mod f
            let top = self.row[n - 1];
            for k in (1..n).rev() {
                self.row[k] = ctx.sub(self.row[k - 1], ctx.mul(top, self.f[k]));
            }
            self.row[0] = ctx.neg(ctx.mul(top, self.f[0]));
        }
    }

    fn apply_frobenius(&mut self) {
        let ctx = self.ctx;
        let n = self.n;
        self.next.fill(0);
        for t in 0..n {
            let c = self.cur[t];
            if c == 0 {
                continue;
            }
            let row = &self.frob[t * n..(t + 1) * n];
            match ctx.mul_row(c) {
                Some(times_c) if ctx.add_is_xor() => {
                    for (o, &r) in self.next.iter_mut().zip(row) {
                        *o ^= times_c[r as usize];
                    }
                }
                Some(times_c) => {
                    for (o, &r) in self.next.iter_mut().zip(row) {
                        *o = ctx.add(*o, times_c[r as usize]);
                    }
                }
                None => {
                    for (o, &r) in self.next.iter_mut().zip(row) {
                        *o = ctx.add(*o, ctx.mul(c, r));
                    }
                }
            }
        }
        std::mem::swap(&mut self.cur, &mut self.next);
    }
}

/// Rabin's criterion over `F_2` with polynomials packed into machine words.
struct Gf2Kernel {
    n: u32,
    checkpoints: Vec<u32>,
}

const SPREAD: [u16; 256] = {
    let mut table = [0u16; 256];
    let mut b = 0;
    while b < 256 {
        let mut v = 0u16;
        let mut i = 0;
        while i < 8 {
            if b >> i & 1 == 1 {
                v |= 1 << (2 * i);
            }
            i += 1;
        }
        table[b] = v;
        b += 1;
    }
    table
};

fn gf2_square(a: u64) -> u64 {
    let mut out = 0u64;
    for byte in 0..4 {
        out |= (SPREAD[(a >> (8 * byte) & 0xff) as usize] as u64) << (16 * byte);
    }
    out
}

fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        a ^= b << (63 - a.leading_zeros() - db);
    }
    a
}

fn gf2_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        a = gf2_rem(a, b);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

impl Gf2Kernel {
    const MAX_DEGREE: usize = 31;

    fn new(n: usize) -> Self {
        let mut checkpoints: Vec<u32> =
            prime_factors(n as u64).into_iter().map(|l| (n as u64 / l) as u32).collect();
        checkpoints.sort_unstable();
        Gf2Kernel { n: n as u32, checkpoints }
    }

    /// `low` holds the coefficients below `x^n`, bit `i` for `x^i`.
    fn is_irreducible(&self, low: u64) -> bool {
        let n = self.n;
        if n == 1 {
            return true;
        }
        if low & 1 == 0 {
            return false;
        }
        let f = low | 1 << n;
        let x = 2u64;
        let mut cur = x;
        let mut next_check = 0;
        for i in 1..=n {
            let mut sq = gf2_square(cur);
            for b in (n..2 * n - 1).rev() {
                if sq >> b & 1 == 1 {
                    sq ^= f << (b - n);
                }
            }
            cur = sq;
            if i == n {
                return cur == x;
            }
            if cur == x {
                return false;
            }
            if next_check < self.checkpoints.len() && self.checkpoints[next_check] == i {
                next_check += 1;
                if gf2_gcd(f, cur ^ x) != 1 {
                    return false;
                }
            }
        }
        unreachable!()
    }
}

const CHUNK: u64 = 1 << 14;

/// Counts monic irreducible polynomials of degree `n` over `ctx` by testing
/// every one of the `q^n` candidates with Rabin's criterion.
pub fn count_irreducible_bruteforce(ctx: &FieldContext, n: usize, budget: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let q = ctx.order();
    let total = match q.checked_pow(n as u32) {
        Some(t) if t <= budget => t,
        _ => return Err(Error::BudgetExceeded { q, n, budget }),
    };
    let chunks = total.div_ceil(CHUNK);

    let count: u64 = if q == 2 && n <= Gf2Kernel::MAX_DEGREE {
        let kernel = Gf2Kernel::new(n);
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let end = ((c + 1) * CHUNK).min(total);
                (c * CHUNK..end).filter(|&low| kernel.is_irreducible(low)).count() as u64
            })
            .sum()
    } else {
        (0..chunks)
            .into_par_iter()
            .map_init(
                || RabinKernel::new(ctx, n),
                |kernel, c| {
                    let start = c * CHUNK;
                    let end = ((c + 1) * CHUNK).min(total);
                    let mut low = low_coefficients(start, q, n);
                    let mut found = 0u64;
                    for _ in start..end {
                        if kernel.is_irreducible(&low) {
                            found += 1;
                        }
                        // odometer step
                        for d in low.iter_mut() {
                            *d += 1;
                            if (*d as u64) < q {
                                break;
                            }
                            *d = 0;
                        }
                    }
                    found
                },
            )
            .sum()
    };
    Ok(BigInt::from(count))
}
