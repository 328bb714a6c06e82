use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Scalar};

/// Univariate polynomial over a finite field, constant term first, with no
/// trailing zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c:?}"),
                1 => format!("{c:?}x"),
                _ => format!("{c:?}x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: Field) -> Self {
        Poly::new(field, vec![Scalar::ONE])
    }

    pub fn x(field: Field) -> Self {
        Poly::new(field, vec![Scalar::ZERO, Scalar::ONE])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().copied().unwrap_or(Scalar::ZERO)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero lead");
        self.scaled(inv)
    }

    pub fn scaled(&self, s: Scalar) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or_default(),
                    o.coeffs.get(i).copied().unwrap_or_default(),
                )
            })
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scaled(self.field.neg(Scalar::ONE)))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![Scalar::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut c[i..i + o.coeffs.len()], a, &o.coeffs);
        }
        Poly::new(f, c)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut r = Poly::one(self.field);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.field;
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.lead()).expect("nonzero lead");
        let mut q = vec![Scalar::ZERO; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            q[k] = c;
            if !c.is_zero() {
                f.axpy(&mut r[k..k + dd + 1], f.neg(c), &d.coeffs);
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let g = self.gcd(o);
        self.mul(o).divrem(&g).0.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(f.from_int(i as i64), a))
            .collect();
        Poly::new(f, c)
    }

    pub fn eval(&self, x: Scalar) -> Scalar {
        let f = self.field;
        self.coeffs.iter().rev().fold(Scalar::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mulmod(&self, o: &Poly, m: &Poly) -> Poly {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut r = Poly::one(self.field).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mulmod(&b, m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mulmod(&b, m);
            }
        }
        r
    }

    /// self^(q^k) mod m by k applications of the q-power map.
    fn frobenius_mod(&self, k: usize, m: &Poly) -> Poly {
        let q = self.field.order() as u64;
        let mut r = self.rem(m);
        for _ in 0..k {
            r = r.powmod(q, m);
        }
        r
    }

    /// g with g^p = self, valid when self' = 0 (only powers x^{pk} occur).
    fn pth_root_poly(&self) -> Poly {
        let f = self.field;
        let p = f.characteristic() as usize;
        let c = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&a| f.pth_root(a))
            .collect();
        Poly::new(f, c)
    }

    /// Complete factorisation into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients).  The output is independent of the
    /// internal randomness of equal-degree splitting.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "cannot factor the zero polynomial");
        let mut out: Vec<(Poly, usize)> = Vec::new();
        for (sqf, mult) in self.monic().squarefree() {
            for (d, part) in sqf.distinct_degree() {
                for irr in part.equal_degree(d) {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| {
            (a.0.coeffs.len(), a.0.coeffs.iter().rev().collect::<Vec<_>>())
                .cmp(&(b.0.coeffs.len(), b.0.coeffs.iter().rev().collect::<Vec<_>>()))
        });
        // merge duplicates (can arise from the p-th power recursion)
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (p, m) in out {
            match merged.last_mut() {
                Some(last) if last.0 == p => last.1 += m,
                _ => merged.push((p, m)),
            }
        }
        merged
    }

    /// Square-free decomposition: monic square-free pairwise coprime parts
    /// with their multiplicities.
    fn squarefree(&self) -> Vec<(Poly, usize)> {
        let f = self.field;
        let p = f.characteristic() as usize;
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            for (g, m) in self.pth_root_poly().squarefree() {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.divrem(&c).0;
        let mut i = 1;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let fac = w.divrem(&y).0;
            if fac.deg() > 0 {
                out.push((fac.monic(), i));
            }
            w = y;
            c = c.divrem(&w).0;
            i += 1;
        }
        if c.deg() > 0 {
            for (g, m) in c.pth_root_poly().squarefree() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree factorisation of a monic square-free polynomial.
    fn distinct_degree(&self) -> Vec<(usize, Poly)> {
        let f = self.field;
        let mut out = Vec::new();
        let mut rest = self.clone();
        let x = Poly::x(f);
        let mut h = x.clone();
        let mut d = 0;
        while rest.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.frobenius_mod(1, &rest);
            let g = rest.gcd(&h.sub(&x));
            if g.deg() > 0 {
                rest = rest.divrem(&g).0;
                h = h.rem(&rest);
                out.push((d, g));
            }
        }
        if rest.deg() > 0 {
            out.push((rest.deg(), rest.monic()));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct irreducibles of
    /// degree d.
    fn equal_degree(&self, d: usize) -> Vec<Poly> {
        let n = self.deg();
        if n == d {
            return vec![self.monic()];
        }
        let f = self.field;
        let q = f.order() as u64;
        let seed = self.coeffs.iter().fold(0xcafe_u64, |h, c| h.wrapping_mul(31).wrapping_add(c.code() as u64));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let a = Poly::new(f, (0..n).map(|_| f.random(&mut rng)).collect());
            if a.deg() == 0 {
                continue;
            }
            let b = if f.characteristic() == 2 {
                // absolute trace map: sum_{i < m d} a^(2^i)
                let md = f.degree() as usize * d;
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..md {
                    t = t.mulmod(&t, self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                // a^((q^d - 1)/2) = (a^(1 + q + ... + q^{d-1}))^((q-1)/2)
                let mut norm = a.rem(self);
                let mut cur = norm.clone();
                for _ in 1..d {
                    cur = cur.frobenius_mod(1, self);
                    norm = norm.mulmod(&cur, self);
                }
                norm.powmod((q - 1) / 2, self).sub(&Poly::one(f))
            };
            let g = self.gcd(&b);
            if g.deg() > 0 && g.deg() < n {
                let mut out = g.equal_degree(d);
                out.extend(self.divrem(&g).0.monic().equal_degree(d));
                return out;
            }
        }
    }

    pub fn is_irreducible(&self) -> bool {
        let fac = self.factor();
        fac.len() == 1 && fac[0].1 == 1
    }
}
