use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported field order; elements are packed into a `u16`.
pub const MAX_ORDER: u32 = 1 << 16;

/// An element of GF(p^m), stored as its coefficient vector packed in base p
/// (`c0 + c1*p + ... + c_{m-1}*p^{m-1}`), which is a canonical form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(pub(crate) u16);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Packed integer code of the element.
    pub fn code(self) -> u32 {
        self.0 as u32
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u16>,
    log: Vec<u16>,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
}

/// A finite field GF(p^m) with a fixed modulus.
///
/// Fields are interned: constructing the same `(p, m)` twice hands back the
/// same tables, so `Field` is a cheap `Copy` handle.
#[derive(Clone, Copy)]
pub struct Field {
    data: &'static FieldData,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.data, other.data)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.data.p, self.data.m)
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), &'static FieldData>> {
    static REGISTRY: OnceLock<Mutex<HashMap<(u32, u32), &'static FieldData>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomial helpers over GF(p) used only while building the tables.
mod prime_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let df = f.len() - 1;
        let lead_inv = inv(f[df], p);
        while r.len() > df {
            let shift = r.len() - 1 - df;
            let c = r[r.len() - 1] * lead_inv % p;
            for (i, &fi) in f.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * fi % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), f, p)
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    /// Ben-Or style irreducibility test for a monic polynomial of degree m.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 0..m / 2 {
            // h <- h^p mod f
            let mut acc = vec![1u32];
            for _ in 0..p {
                acc = mulmod(&acc, &h, f, p);
            }
            h = acc;
            let g = gcd(f, &sub(&h, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl Field {
    /// GF(p^m) with the lexicographically least monic irreducible modulus,
    /// ordering candidates by their packed lower coefficients
    /// `c0 + c1*p + ... + c_{m-1}*p^{m-1}`.  For m = 1 this is `x`.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER as u64);
        let q = q.ok_or(Error::FieldTooLarge { p, m })? as u32;
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(data) = reg.get(&(p, m)) {
            return Ok(Field { data });
        }
        let data: &'static FieldData = Box::leak(Box::new(build(p, m, q)));
        reg.insert((p, m), data);
        Ok(Field { data })
    }

    pub fn characteristic(self) -> u32 {
        self.data.p
    }

    pub fn degree(self) -> u32 {
        self.data.m
    }

    pub fn order(self) -> u32 {
        self.data.q
    }

    /// Coefficients of the monic modulus, constant term first.
    pub fn modulus(self) -> &'static [u32] {
        &self.data.modulus
    }

    pub fn zero(self) -> Scalar {
        Scalar::ZERO
    }

    pub fn one(self) -> Scalar {
        Scalar::ONE
    }

    /// Image of an integer under Z -> GF(p).
    pub fn from_int(self, n: i64) -> Scalar {
        Scalar(n.rem_euclid(self.data.p as i64) as u16)
    }

    pub fn from_coeffs(self, coeffs: &[u32]) -> Result<Scalar> {
        if coeffs.len() > self.data.m as usize {
            return Err(Error::DimensionMismatch(format!(
                "scalar has {} coefficients, field degree is {}",
                coeffs.len(),
                self.data.m
            )));
        }
        let p = self.data.p;
        let mut code = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::ScalarOutOfRange { value: c, p });
            }
            code = code * p + c;
        }
        Ok(Scalar(code as u16))
    }

    pub fn coeffs(self, a: Scalar) -> Vec<u32> {
        let p = self.data.p;
        let mut code = a.0 as u32;
        (0..self.data.m)
            .map(|_| {
                let c = code % p;
                code /= p;
                c
            })
            .collect()
    }

    /// The class of `x` modulo the modulus (a generator of the field over GF(p)
    /// when m > 1).
    pub fn generator(self) -> Scalar {
        if self.data.m == 1 {
            // modulus x: the class of x is zero; use a primitive element instead
            self.primitive()
        } else {
            Scalar(self.data.p as u16)
        }
    }

    /// The primitive element used for the log tables.
    pub fn primitive(self) -> Scalar {
        Scalar(self.data.exp[1])
    }

    pub fn elements(self) -> impl Iterator<Item = Scalar> {
        (0..self.data.q).map(|c| Scalar(c as u16))
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        let d = self.data;
        if d.p == 2 {
            return Scalar(a.0 ^ b.0);
        }
        if let Some(t) = &d.add {
            return Scalar(t[a.0 as usize * d.q as usize + b.0 as usize]);
        }
        let p = d.p;
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..d.m {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Scalar(out as u16)
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        Scalar(self.data.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        if a.0 == 0 || b.0 == 0 {
            return Scalar::ZERO;
        }
        let d = self.data;
        Scalar(d.exp[d.log[a.0 as usize] as usize + d.log[b.0 as usize] as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: Scalar) -> Option<Scalar> {
        if a.0 == 0 {
            return None;
        }
        let d = self.data;
        let n = d.q as usize - 1;
        let l = d.log[a.0 as usize] as usize;
        Some(Scalar(d.exp[(n - l) % n]))
    }

    pub fn div(self, a: Scalar, b: Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(self, a: Scalar, e: u64) -> Scalar {
        if e == 0 {
            return Scalar::ONE;
        }
        if a.0 == 0 {
            return Scalar::ZERO;
        }
        let d = self.data;
        let n = d.q as u64 - 1;
        let l = d.log[a.0 as usize] as u64;
        Scalar(d.exp[((l * (e % n)) % n) as usize])
    }

    /// The unique b with b^p = a (Frobenius is bijective on a finite field).
    pub fn pth_root(self, a: Scalar) -> Scalar {
        self.pow(a, (self.data.q / self.data.p) as u64)
    }

    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        Scalar(rng.gen_range(0..self.data.q) as u16)
    }

    /// `dst += f * src`, entrywise.
    #[inline]
    pub fn axpy(self, dst: &mut [Scalar], f: Scalar, src: &[Scalar]) {
        if f.0 == 0 {
            return;
        }
        let d = self.data;
        let lf = d.log[f.0 as usize] as usize;
        if d.p == 2 {
            for (x, &s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    x.0 ^= d.exp[lf + d.log[s.0 as usize] as usize];
                }
            }
        } else {
            for (x, &s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    *x = self.add(*x, Scalar(d.exp[lf + d.log[s.0 as usize] as usize]));
                }
            }
        }
    }

    /// `v *= f`, entrywise.
    pub fn scale(self, v: &mut [Scalar], f: Scalar) {
        for x in v.iter_mut() {
            *x = self.mul(*x, f);
        }
    }

    pub fn dot(self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        a.iter()
            .zip(b)
            .fold(Scalar::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

fn build(p: u32, m: u32, q: u32) -> FieldData {
    let modulus = if m == 1 {
        vec![0, 1]
    } else {
        let mut found = None;
        for code in 0..q {
            let mut f: Vec<u32> = Vec::with_capacity(m as usize + 1);
            let mut c = code;
            for _ in 0..m {
                f.push(c % p);
                c /= p;
            }
            f.push(1);
            if f[0] != 0 && prime_poly::is_irreducible(&f, p) {
                found = Some(f);
                break;
            }
        }
        found.expect("an irreducible polynomial exists in every degree")
    };

    let unpack = |code: u32| -> Vec<u32> {
        let mut c = code;
        prime_poly::trim(
            (0..m)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect(),
        )
    };
    let pack = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
    let slow_mul = |a: u32, b: u32| -> u32 {
        if m == 1 {
            return a * b % p;
        }
        pack(&prime_poly::mulmod(&unpack(a), &unpack(b), &modulus, p))
    };

    let n = q - 1;
    let factors = prime_factors(n.max(1));
    let slow_pow = |a: u32, mut e: u32| -> u32 {
        let mut r = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = slow_mul(r, b);
            }
            b = slow_mul(b, b);
            e >>= 1;
        }
        r
    };
    let prim = (1..q)
        .find(|&g| n == 1 || factors.iter().all(|&r| slow_pow(g, n / r) != 1))
        .expect("multiplicative group is cyclic");

    let mut exp = vec![0u16; 2 * n as usize];
    let mut log = vec![0u16; q as usize];
    let mut x = 1u32;
    for i in 0..n {
        exp[i as usize] = x as u16;
        log[x as usize] = i as u16;
        x = slow_mul(x, prim);
    }
    for i in n..2 * n {
        exp[i as usize] = exp[(i - n) as usize];
    }

    let neg: Vec<u16> = (0..q)
        .map(|a| {
            let v: Vec<u32> = unpack(a).iter().map(|&d| (p - d) % p).collect();
            pack(&v) as u16
        })
        .collect();

    let add = if p != 2 && q <= 256 {
        let mut t = vec![0u16; (q * q) as usize];
        for a in 0..q {
            let ua = unpack(a);
            for b in 0..q {
                let ub = unpack(b);
                let len = ua.len().max(ub.len());
                let s: Vec<u32> = (0..len)
                    .map(|i| (ua.get(i).copied().unwrap_or(0) + ub.get(i).copied().unwrap_or(0)) % p)
                    .collect();
                t[(a * q + b) as usize] = pack(&s) as u16;
            }
        }
        Some(t)
    } else {
        None
    };

    FieldData {
        p,
        m,
        q,
        modulus,
        exp,
        log,
        add,
        neg,
    }
}

/// Smallest m with p^m = 1 (mod n), i.e. the degree of the splitting field
/// for groups whose exponent has p'-part n.
pub fn splitting_degree(p: u32, exponent: u64) -> u32 {
    let mut n = exponent.max(1);
    while n.is_multiple_of(p as u64) {
        n /= p as u64;
    }
    if n == 1 {
        return 1;
    }
    let mut m = 1u32;
    let mut acc = p as u64 % n;
    while acc != 1 {
        acc = acc * p as u64 % n;
        m += 1;
    }
    m
}
