//! Arithmetic for prime-power finite fields GF(p^k).
//!
//! Elements are encoded as integers in `0..q`: the integer `e` stands for the
//! polynomial over GF(p) whose base-p digits are its coefficients, least
//! significant digit first. The reduction modulus is the lexicographically
//! smallest monic irreducible of degree `k` (coefficients compared from the
//! highest degree down), so encodings are reproducible across runs.
//!
//! Multiplication uses precomputed log/antilog tables for q <= 256 and
//! schoolbook polynomial reduction above.

use crate::error::{Error, Result};

/// Largest field order for which log/antilog tables are built.
const TABLE_LIMIT: u32 = 256;

/// Cap on the number of vectors enumerated by [`monic_representatives`].
const REPRESENTATIVE_LIMIT: u128 = 1 << 26;

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A canonical subspace representative: a vector over GF(q) whose first
/// nonzero entry is 1.
pub type ColumnVector = Vec<u32>;

/// A concrete GF(p^k) with a fixed element encoding.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Monic irreducible of degree k over GF(p), coefficients ascending by
    /// degree (length k+1, last entry 1). Unused for k = 1.
    modulus: Vec<u32>,
    /// log[e] = discrete log of e base the chosen generator; log[0] unused.
    log: Vec<u32>,
    /// antilog[i] = generator^i for i in 0..q-1.
    antilog: Vec<u32>,
}

impl FieldSpec {
    /// The field GF(p^k) with the default (lexicographically smallest) modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::Precondition("extension degree k must be >= 1".into()));
        }
        let modulus = smallest_irreducible(p, k)?;
        Self::build(p, k, modulus)
    }

    /// The field GF(p^k) with an explicit monic irreducible modulus
    /// (coefficients ascending by degree, length k+1).
    pub fn with_modulus(p: u32, k: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::Precondition("extension degree k must be >= 1".into()));
        }
        if modulus.len() != k as usize + 1 {
            return Err(Error::BadModulus(format!(
                "expected {} coefficients, got {}",
                k + 1,
                modulus.len()
            )));
        }
        if modulus[k as usize] != 1 {
            return Err(Error::BadModulus("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus(format!("coefficients must be < p = {p}")));
        }
        if k > 1 && !is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }
        Self::build(p, k, modulus.to_vec())
    }

    /// The field of order q, factoring q = p^k.
    pub fn from_order(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q as u64));
        }
        let mut p = 2;
        while q % p != 0 {
            p += 1;
        }
        let mut rest = q;
        let mut k = 0;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q as u64));
        }
        Self::new(p, k)
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>) -> Result<Self> {
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or(Error::UnsupportedAlphabet {
                q: u64::MAX,
                reason: "field order does not fit in 32 bits",
            })? as u32;
        let mut field = FieldSpec {
            p,
            k,
            q,
            modulus,
            log: Vec::new(),
            antilog: Vec::new(),
        };
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, ascending by degree.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn check(&self, e: u32) -> Result<()> {
        if e < self.q {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: e,
                q: self.q,
            })
        }
    }

    /// Sum in GF(q).
    pub fn add(&self, a: u32, b: u32) -> Result<u32> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    /// Product in GF(q).
    pub fn mul(&self, a: u32, b: u32) -> Result<u32> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_fast(a, b))
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> Result<u32> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero { q: self.q });
        }
        if !self.antilog.is_empty() {
            let order = self.q - 1;
            return Ok(self.antilog[((order - self.log[a as usize]) % order) as usize]);
        }
        // a^(q-2) by square and multiply.
        let mut acc = 1u32;
        let mut base = a;
        let mut exp = self.q - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        Ok(acc)
    }

    fn add_raw(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        if self.p == 2 {
            return a ^ b;
        }
        // Digitwise base-p addition.
        let p = self.p;
        let mut out = 0u32;
        let mut mult = 1u32;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.k {
            out += ((a % p + b % p) % p) * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        out
    }

    fn mul_fast(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.antilog.is_empty() {
            let order = self.q - 1;
            let idx = (self.log[a as usize] + self.log[b as usize]) % order;
            return self.antilog[idx as usize];
        }
        self.mul_raw(a, b)
    }

    /// Schoolbook polynomial product reduced by the modulus.
    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p as u64;
        let k = self.k as usize;
        let da = digits(a, self.p, k);
        let db = digits(b, self.p, k);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // Reduce: x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1}).
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus[..k].iter().enumerate() {
                let sub = (c * m as u64) % p;
                prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
            }
        }
        let mut out = 0u32;
        for i in (0..k).rev() {
            out = out * self.p + prod[i] as u32;
        }
        out
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if q == 2 {
            self.log = vec![0, 0];
            self.antilog = vec![1];
            return;
        }
        'outer: for g in 2..q {
            let mut seen = 0u32;
            let mut cur = 1u32;
            let mut antilog = Vec::with_capacity((q - 1) as usize);
            loop {
                antilog.push(cur);
                seen += 1;
                cur = self.mul_raw(cur, g);
                if cur == 1 {
                    break;
                }
                if seen > q {
                    continue 'outer;
                }
            }
            if seen == q - 1 {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in antilog.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.log = log;
                self.antilog = antilog;
                return;
            }
        }
        unreachable!("every finite field has a primitive element");
    }
}

fn digits(mut e: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = vec![0u32; k];
    for d in out.iter_mut() {
        *d = e % p;
        e /= p;
        if e == 0 {
            break;
        }
    }
    out
}

/// Remainder of polynomial division over GF(p); inputs ascending by degree.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut rem: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    let p64 = p as u64;
    // den is monic, so no leading-coefficient inversion is needed.
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - dd;
        if lead != 0 {
            for (j, &m) in den.iter().enumerate() {
                let sub = (lead * m as u64) % p64;
                rem[shift + j] = (rem[shift + j] + p64 - sub) % p64;
            }
        }
        rem.pop();
    }
    rem.iter().map(|&c| c as u32).collect()
}

/// Irreducibility by trial division by all monic polynomials of degree <= k/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() - 1;
    if poly[0] == 0 {
        // Divisible by x.
        return k == 1;
    }
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for enc in 0..count {
            let mut den = vec![0u32; d + 1];
            let mut e = enc;
            for c in den.iter_mut().take(d) {
                *c = (e % p as u64) as u32;
                e /= p as u64;
            }
            den[d] = 1;
            if poly_rem(poly, &den, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree k over GF(p),
/// comparing coefficients from the highest degree down.
fn smallest_irreducible(p: u32, k: u32) -> Result<Vec<u32>> {
    if k == 1 {
        // Any monic linear polynomial is irreducible; x is the smallest.
        return Ok(vec![0, 1]);
    }
    let k = k as usize;
    let count = (p as u128).pow(k as u32);
    if count > REPRESENTATIVE_LIMIT {
        return Err(Error::ResourceLimit {
            needed: count,
            budget: REPRESENTATIVE_LIMIT,
        });
    }
    for enc in 0..count {
        // enc encodes (c_{k-1}, ..., c_0) base p, most significant digit first,
        // so ascending enc scans coefficients from the highest degree down.
        let mut poly = vec![0u32; k + 1];
        poly[k] = 1;
        let mut e = enc;
        for i in 0..k {
            poly[i] = (e % p as u128) as u32;
            e /= p as u128;
        }
        if is_irreducible(&poly, p) {
            return Ok(poly);
        }
    }
    unreachable!("irreducible polynomials exist for every degree");
}

/// Canonical representatives of the (q^m - 1)/(q - 1) one-dimensional
/// subspaces of F_q^m: all vectors whose first nonzero entry is 1, in
/// increasing order of the integer with the entries as big-endian base-q
/// digits.
pub fn monic_representatives(f: &FieldSpec, m: u32) -> Result<Vec<ColumnVector>> {
    if m < 1 {
        return Err(Error::Precondition("m must be >= 1".into()));
    }
    let q = f.q() as u128;
    let total = q
        .checked_pow(m)
        .ok_or(Error::ResourceLimit {
            needed: u128::MAX,
            budget: REPRESENTATIVE_LIMIT,
        })?;
    if total > REPRESENTATIVE_LIMIT {
        return Err(Error::ResourceLimit {
            needed: total,
            budget: REPRESENTATIVE_LIMIT,
        });
    }
    let expected = ((total - 1) / (q - 1)) as usize;
    let mut out = Vec::with_capacity(expected);
    for value in 1..total {
        let mut entries = vec![0u32; m as usize];
        let mut v = value;
        for i in (0..m as usize).rev() {
            entries[i] = (v % q) as u32;
            v /= q;
        }
        let first = entries.iter().copied().find(|&e| e != 0).unwrap_or(0);
        if first == 1 {
            out.push(entries);
        }
    }
    debug_assert_eq!(out.len(), expected);
    Ok(out)
}
