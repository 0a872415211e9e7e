//! Arithmetic in 𝔽_p for a word-size prime `p`.

use core::fmt;
use core::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// The Mersenne prime 2^61 - 1, the default modulus.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// A residue modulo `p`, always kept in canonical form `[0, p)`.
///
/// The element does not carry its modulus; every operation goes through the
/// [`FieldCtx`] it was produced under.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Snapshot of the field-operation tally.
///
/// `add_like` covers additions, subtractions and negations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub add_like: u64,
    pub mul: u64,
    pub inv: u64,
}

impl OpCounts {
    pub fn total(&self) -> u64 {
        self.add_like + self.mul + self.inv
    }
}

impl core::ops::Sub for OpCounts {
    type Output = OpCounts;

    fn sub(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            add_like: self.add_like - rhs.add_like,
            mul: self.mul - rhs.mul,
            inv: self.inv - rhs.inv,
        }
    }
}

impl core::ops::Add for OpCounts {
    type Output = OpCounts;

    fn add(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            add_like: self.add_like + rhs.add_like,
            mul: self.mul + rhs.mul,
            inv: self.inv + rhs.inv,
        }
    }
}

#[derive(Debug, Default)]
struct OpTally {
    enabled: AtomicBool,
    add_like: AtomicU64,
    mul: AtomicU64,
    inv: AtomicU64,
}

/// Field context: the modulus plus an optional operation tally.
///
/// The tally uses relaxed atomics so a context can be shared, but counts are
/// only meaningful when a single thread drives the computation being
/// measured. Parallel callers should use one context per thread and add the
/// snapshots.
#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    mersenne: bool,
    tally: OpTally,
}

impl Clone for FieldCtx {
    /// Clones the modulus; the clone starts with a fresh, disabled tally.
    fn clone(&self) -> Self {
        FieldCtx {
            p: self.p,
            mersenne: self.mersenne,
            tally: OpTally::default(),
        }
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for FieldCtx {}

impl Default for FieldCtx {
    fn default() -> Self {
        FieldCtx::new(MERSENNE_61).expect("2^61-1 is prime")
    }
}

impl FieldCtx {
    /// Creates a context for the prime `p`, with `2 < p < 2^62`.
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= (1 << 62) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldCtx {
            p,
            mersenne: p == MERSENNE_61,
            tally: OpTally::default(),
        })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Turns the operation tally on or off. Counts are kept across toggles.
    pub fn set_counting(&self, on: bool) {
        self.tally.enabled.store(on, Ordering::Relaxed);
    }

    pub fn is_counting(&self) -> bool {
        self.tally.enabled.load(Ordering::Relaxed)
    }

    pub fn reset_counts(&self) {
        self.tally.add_like.store(0, Ordering::Relaxed);
        self.tally.mul.store(0, Ordering::Relaxed);
        self.tally.inv.store(0, Ordering::Relaxed);
    }

    pub fn counts(&self) -> OpCounts {
        OpCounts {
            add_like: self.tally.add_like.load(Ordering::Relaxed),
            mul: self.tally.mul.load(Ordering::Relaxed),
            inv: self.tally.inv.load(Ordering::Relaxed),
        }
    }

    /// Runs `f` with counting enabled from a zeroed tally and returns its
    /// result along with the operations it performed. The previous tally
    /// state is restored afterwards.
    pub fn measure<T>(&self, f: impl FnOnce() -> T) -> (T, OpCounts) {
        let was_on = self.is_counting();
        let before = self.counts();
        self.set_counting(true);
        let out = f();
        let spent = self.counts() - before;
        self.set_counting(was_on);
        (out, spent)
    }

    #[inline]
    fn tick_add(&self) {
        if self.tally.enabled.load(Ordering::Relaxed) {
            self.tally.add_like.fetch_add(1, Ordering::Relaxed);
        }
    }

    #[inline]
    fn tick_mul(&self) {
        if self.tally.enabled.load(Ordering::Relaxed) {
            self.tally.mul.fetch_add(1, Ordering::Relaxed);
        }
    }

    #[inline]
    fn tick_inv(&self) {
        if self.tally.enabled.load(Ordering::Relaxed) {
            self.tally.inv.fetch_add(1, Ordering::Relaxed);
        }
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn elem(&self, v: u64) -> FieldElem {
        FieldElem(v % self.p)
    }

    /// Accepts `v` only if it is already canonical.
    pub fn try_elem(&self, v: u64) -> Option<FieldElem> {
        (v < self.p).then_some(FieldElem(v))
    }

    /// Maps a signed integer into the field.
    pub fn elem_i64(&self, v: i64) -> FieldElem {
        let r = v.rem_euclid(self.p as i64);
        FieldElem(r as u64)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.tick_add();
        let s = a.0 + b.0;
        FieldElem(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.tick_add();
        FieldElem(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.tick_add();
        FieldElem(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.tick_mul();
        FieldElem(self.mul_raw(a.0, b.0))
    }

    #[inline]
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        let x = (a as u128) * (b as u128);
        if self.mersenne {
            let lo = (x as u64) & MERSENNE_61;
            let hi = (x >> 61) as u64;
            let mut r = lo + hi;
            r = (r & MERSENNE_61) + (r >> 61);
            if r >= MERSENNE_61 {
                r - MERSENNE_61
            } else {
                r
            }
        } else {
            (x % self.p as u128) as u64
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm; counted
    /// as a single inversion.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::ZeroInversion);
        }
        self.tick_inv();
        let (mut r0, mut r1) = (self.p as i128, a.0 as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(FieldElem(t0.rem_euclid(self.p as i128) as u64))
    }

    /// `a^e` by left-to-right square-and-multiply.
    ///
    /// Uses `floor(log2 e)` squarings plus one multiplication per set bit
    /// below the leading one, so at most `2·log2(e)` multiplications;
    /// `pow(a, 2^k)` costs exactly `k`. `e = 0` and `e = 1` cost nothing, and
    /// `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        let top = 63 - e.leading_zeros();
        let mut acc = a;
        for bit in (0..top).rev() {
            acc = self.mul(acc, acc);
            if (e >> bit) & 1 == 1 {
                acc = self.mul(acc, a);
            }
        }
        acc
    }

    /// Draws a uniform element of the whole field. See [`SampleSet::sample`].
    pub fn sample_uniform(&self, rng: &mut SeededRng, exclude_zero: bool) -> FieldElem {
        SampleSet::full(self).sample(rng, exclude_zero)
    }
}

/// The finite subset `S = {0, 1, …, size-1} ⊆ 𝔽_p` random challenges are
/// drawn from. The full field is `size = p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSet {
    size: u64,
}

impl SampleSet {
    pub fn full(ctx: &FieldCtx) -> Self {
        SampleSet { size: ctx.modulus() }
    }

    /// The prefix `{0, …, size-1}`; requires `2 <= size <= p`.
    pub fn prefix(ctx: &FieldCtx, size: u64) -> Result<Self> {
        if size < 2 || size > ctx.modulus() {
            return Err(Error::InvalidParameter(alloc::format!(
                "sample set size {size} must lie in [2, {}]",
                ctx.modulus()
            )));
        }
        Ok(SampleSet { size })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Uniform draw from `S` (or `S \ {0}` when `exclude_zero`).
    ///
    /// Word-consumption contract: let `r` be the number of candidates and
    /// `mask = 2^ceil(log2 r) - 1`. Each attempt consumes exactly one 64-bit
    /// word `w` from `rng` and accepts `w & mask` if it is below `r`; the
    /// result is that value (plus one when zero is excluded). Each call
    /// counts as one field draw on `rng`.
    pub fn sample(&self, rng: &mut SeededRng, exclude_zero: bool) -> FieldElem {
        let (range, offset) = if exclude_zero {
            (self.size - 1, 1)
        } else {
            (self.size, 0)
        };
        debug_assert!(range >= 1);
        rng.note_field_draw();
        if range == 1 {
            return FieldElem(offset);
        }
        let mask = u64::MAX >> (range - 1).leading_zeros();
        loop {
            let w = rng.next_word() & mask;
            if w < range {
                return FieldElem(w + offset);
            }
        }
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
