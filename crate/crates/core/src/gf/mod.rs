//! Arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^n}, q = p^e.
//!
//! F_{q^n} is a single extension F_p[x]/(f) of degree e·n, where f is the
//! least monic irreducible polynomial (see [`FieldTower::modulus`]). The
//! subfield F_q is recovered as the set of elements fixed by x ↦ x^q.
//!
//! Elements are stored by their integer encoding Σ c_i p^i, where c_i are the
//! polynomial-basis coordinates. This is also the wire encoding used by the
//! command line reports. Multiplication goes through discrete log tables built
//! from a primitive element; small fields additionally get full Cayley tables.

mod poly;

use crate::error::{Error, Result};

/// Largest supported field order q^n.
pub const MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order get precomputed addition and multiplication tables.
const CAYLEY_LIMIT: u32 = 256;

/// An element of F_{q^n}, identified by its encoding Σ c_i p^i.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn encoded(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn from_raw(v: u32) -> Fe {
        Fe(v)
    }
}

/// The field F_{q^n} together with the automorphism σ: x ↦ x^{q^m}.
///
/// Immutable after construction and `Sync`, so one instance can be shared by
/// every worker of a census.
#[derive(Clone)]
pub struct FieldTower {
    p: u32,
    e: u32,
    n: u32,
    m: u32,
    q: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive: Fe,
    // exp has length 2(order-1) so log sums never need a reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    sigma: Vec<u32>,
    sigma_inv: Vec<u32>,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
}

impl std::fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("n", &self.n)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn pow_mod_u64(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut b = (base % modulus) as u128;
    let mut acc = 1u128;
    let m = modulus as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl FieldTower {
    /// Builds F_{q^n}, q = p^e, with σ: x ↦ x^{q^m}.
    pub fn new(p: u32, e: u32, n: u32, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 || n == 0 || m == 0 {
            return Err(Error::BadFieldParams(format!(
                "e, n and m must be positive (got e={e}, n={n}, m={m})"
            )));
        }
        if gcd_u64(m as u64, n as u64) != 1 {
            return Err(Error::GcdViolation { m, n });
        }
        let degree = e
            .checked_mul(n)
            .ok_or(Error::FieldTooLarge { order: u64::MAX })?;
        let order = (p as u64)
            .checked_pow(degree)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge {
                order: (p as u64).saturating_pow(degree),
            })?;
        let order = order as u32;
        let q = p.pow(e);
        let modulus =
            poly::least_irreducible(p, degree).ok_or(Error::NoIrreducible { p, degree })?;

        let mut field = FieldTower {
            p,
            e,
            n,
            m,
            q,
            order,
            modulus,
            primitive: Fe::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            sigma: Vec::new(),
            sigma_inv: Vec::new(),
            add_table: None,
            mul_table: None,
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let order = self.order;
        let group = (order - 1) as u64;
        let factors = poly::prime_factors(group);

        // smallest-encoded generator of the multiplicative group
        let mut primitive = None;
        for g in 1..order {
            let gp = self.coeffs_of(g);
            let is_gen = factors.iter().all(|&r| {
                let h = poly::powmod(&gp, group / r, &self.modulus, self.p);
                h != [1]
            });
            if is_gen {
                primitive = Some(g);
                break;
            }
        }
        // order 2 (F_2): 1 generates the trivial group
        let primitive = primitive.unwrap_or(1);
        self.primitive = Fe(primitive);

        let gp = self.coeffs_of(primitive);
        let mut exp = vec![0u32; 2 * group.max(1) as usize];
        let mut log = vec![0u32; order as usize];
        let mut cur = vec![1u32];
        for i in 0..group as usize {
            let enc = self.encode_coeffs(&cur);
            exp[i] = enc;
            log[enc as usize] = i as u32;
            cur = poly::mulmod(&cur, &gp, &self.modulus, self.p);
        }
        for i in group as usize..exp.len() {
            exp[i] = exp[i - group as usize];
        }
        self.exp = exp;
        self.log = log;

        self.neg = (0..order)
            .map(|x| {
                let c: Vec<u32> = self
                    .coeffs_of(x)
                    .iter()
                    .map(|&d| (self.p - d) % self.p)
                    .collect();
                self.encode_coeffs(&c)
            })
            .collect();

        if order <= CAYLEY_LIMIT {
            let mut add = vec![0u32; (order * order) as usize];
            let mut mul = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    let idx = (a * order + b) as usize;
                    add[idx] = self.add_digits(a, b);
                    mul[idx] = self.mul_log(Fe(a), Fe(b)).0;
                }
            }
            self.add_table = Some(add);
            self.mul_table = Some(mul);
        }

        let qm = self.q_power_mod_group(self.m as i64);
        let qm_inv = self.q_power_mod_group(-(self.m as i64));
        self.sigma = (0..order).map(|x| self.pow_log(Fe(x), qm).0).collect();
        self.sigma_inv = (0..order).map(|x| self.pow_log(Fe(x), qm_inv).0).collect();
    }

    fn coeffs_of(&self, mut v: u32) -> Vec<u32> {
        let mut c = Vec::with_capacity(self.degree() as usize);
        for _ in 0..self.degree() {
            c.push(v % self.p);
            v /= self.p;
        }
        poly::trim(&mut c);
        c
    }

    fn encode_coeffs(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    #[inline]
    fn mul_log(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// x^k for k given modulo the group order.
    #[inline]
    fn pow_log(&self, x: Fe, k: u64) -> Fe {
        if x.0 == 0 {
            return if k == 0 { Fe::ONE } else { Fe::ZERO };
        }
        let group = (self.order - 1) as u64;
        Fe(self.exp[((self.log[x.0 as usize] as u64 * k) % group) as usize])
    }

    /// q^k reduced modulo q^n - 1 (k may be negative; σ has order n).
    fn q_power_mod_group(&self, k: i64) -> u64 {
        let n = self.n as i64;
        let k = k.rem_euclid(n) as u64;
        let group = (self.order - 1) as u64;
        let r = pow_mod_u64(self.q as u64, k, group);
        // x^{q^0} = x must stay the identity even when the group is trivial
        if group == 1 {
            1
        } else {
            r
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    /// Size of the subfield F_q.
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Size q^n of the whole field.
    pub fn order(&self) -> u32 {
        self.order
    }
    /// Degree e·n of F_{q^n} over F_p.
    pub fn degree(&self) -> u32 {
        self.e * self.n
    }
    /// Coefficients of the defining polynomial, constant term first (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The generator of the multiplicative group used for the log tables.
    pub fn primitive(&self) -> Fe {
        self.primitive
    }

    /// The class of x in F_p[x]/(f).
    pub fn generator(&self) -> Fe {
        if self.degree() == 1 {
            self.neg(Fe(self.modulus[0]))
        } else {
            Fe(self.p)
        }
    }

    pub fn elem(&self, encoded: u64) -> Result<Fe> {
        if encoded < self.order as u64 {
            Ok(Fe(encoded as u32))
        } else {
            Err(Error::ElementOutOfRange {
                value: encoded,
                order: self.order,
            })
        }
    }

    /// The element c (an integer reduced mod p) of the prime field.
    pub fn from_int(&self, c: i64) -> Fe {
        Fe(c.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> {
        (1..self.order).map(Fe)
    }

    /// Polynomial-basis coordinates, padded to e·n entries.
    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        let mut v = x.0;
        (0..self.degree())
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe> {
        if c.len() > self.degree() as usize {
            return Err(Error::DimensionMismatch {
                expected: self.degree() as usize,
                found: c.len(),
            });
        }
        if let Some(&bad) = c.iter().find(|&&d| d >= self.p) {
            return Err(Error::ElementOutOfRange {
                value: bad as u64,
                order: self.p,
            });
        }
        Ok(Fe(self.encode_coeffs(c)))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        match &self.add_table {
            Some(t) => Fe(t[(a.0 * self.order + b.0) as usize]),
            None => Fe(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.mul_table {
            Some(t) => Fe(t[(a.0 * self.order + b.0) as usize]),
            None => self.mul_log(a, b),
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let group = self.order - 1;
        let l = self.log[a.0 as usize];
        Ok(Fe(self.exp[((group - l) % group) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// x^k by square-and-multiply.
    pub fn pow(&self, x: Fe, mut k: u64) -> Fe {
        let mut acc = Fe::ONE;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Discrete log to the base [`primitive`](Self::primitive); None for zero.
    pub fn log(&self, x: Fe) -> Option<u32> {
        (!x.is_zero()).then(|| self.log[x.0 as usize])
    }

    /// x^{q^k}; k is taken modulo n.
    pub fn frobenius_q(&self, x: Fe, k: i64) -> Fe {
        self.pow_log(x, self.q_power_mod_group(k))
    }

    /// σ(x) = x^{q^m}.
    #[inline]
    pub fn sigma(&self, x: Fe) -> Fe {
        Fe(self.sigma[x.0 as usize])
    }

    #[inline]
    pub fn sigma_inv(&self, x: Fe) -> Fe {
        Fe(self.sigma_inv[x.0 as usize])
    }

    /// σ^k(x) = x^{q^{mk}}; negative k gives powers of σ^{-1}.
    pub fn sigma_pow(&self, x: Fe, k: i64) -> Fe {
        self.frobenius_q(x, self.m as i64 * k)
    }

    /// N(x) = x^{(q^n-1)/(q-1)}, the norm onto F_q.
    pub fn norm(&self, x: Fe) -> Fe {
        let group = (self.order - 1) as u64;
        self.pow_log(x, group / (self.q - 1) as u64)
    }

    pub fn is_in_subfield(&self, x: Fe) -> bool {
        self.frobenius_q(x, 1) == x
    }

    /// The q elements of F_q in encoding order.
    pub fn subfield_elements(&self) -> Vec<Fe> {
        let group = (self.order - 1) as u64;
        let step = group / (self.q - 1) as u64;
        let mut out: Vec<Fe> = std::iter::once(Fe::ZERO)
            .chain((0..(self.q - 1) as u64).map(|j| Fe(self.exp[(j * step) as usize])))
            .collect();
        out.sort();
        out
    }

    /// N_a = {x : N(x) = a} for a ∈ F_q^*.
    pub fn norm_class(&self, a: Fe) -> Result<Vec<Fe>> {
        if a.is_zero() {
            return Err(Error::ZeroArgument);
        }
        if !self.is_in_subfield(a) {
            return Err(Error::NotInSubfield);
        }
        Ok(self
            .nonzero_elements()
            .filter(|&x| self.norm(x) == a)
            .collect())
    }

    pub fn is_square(&self, x: Fe) -> bool {
        if x.is_zero() || self.p == 2 {
            return true;
        }
        self.log[x.0 as usize].is_multiple_of(2)
    }

    /// True iff d = x^{q^m+1} for some x. For d ≠ 0 this is
    /// d^{(q^n-1)/r} = 1 with r = gcd(q^n-1, q^m+1).
    pub fn is_sigma_norm_value(&self, d: Fe) -> bool {
        if d.is_zero() {
            return true;
        }
        let group = (self.order - 1) as u64;
        if group == 1 {
            return true;
        }
        let r = gcd_u64(group, self.q_power_mod_group(self.m as i64) + 1);
        (self.log[d.0 as usize] as u64).is_multiple_of(r)
    }

    /// The field automorphism order: σ^k = id iff n | m·k.
    pub fn sigma_is_identity_power(&self, k: u32) -> bool {
        (self.m as u64 * k as u64).is_multiple_of(self.n as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f4() -> FieldTower {
        FieldTower::new(2, 1, 2, 1).unwrap()
    }

    /// Polynomial multiplication mod f, independent of the log tables.
    fn schoolbook_mul(f: &FieldTower, a: Fe, b: Fe) -> Fe {
        let pa = poly::trim_vec(f.coeffs(a));
        let pb = poly::trim_vec(f.coeffs(b));
        let r = poly::mulmod(&pa, &pb, f.modulus(), f.p());
        f.from_coeffs(&r).unwrap()
    }

    #[test]
    fn f4_basics() {
        let f = f4();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let alpha = f.generator();
        assert_eq!(alpha.encoded(), 2);
        let alpha_plus_one = f.add(alpha, Fe::ONE);
        assert_eq!(f.mul(alpha, alpha), alpha_plus_one);
        assert_eq!(f.inv(alpha).unwrap(), alpha_plus_one);
        assert_eq!(f.sigma(alpha), alpha_plus_one);
        assert_eq!(f.norm(alpha), Fe::ONE);
        assert_eq!(f.mul(alpha, Fe::ONE), alpha);
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn f27_modulus_is_least_by_trial_division() {
        let f = FieldTower::new(3, 1, 3, 1).unwrap();
        // independent oracle: first monic cubic with no root in F_3
        let mut expected = None;
        'outer: for tail in 0..27u32 {
            let c = [tail % 3, (tail / 3) % 3, tail / 9];
            for x in 0..3u32 {
                let v = (x * x * x + c[2] * x * x + c[1] * x + c[0]) % 3;
                if v == 0 {
                    continue 'outer;
                }
            }
            expected = Some(vec![c[0], c[1], c[2], 1]);
            break;
        }
        assert_eq!(Some(f.modulus().to_vec()), expected);
        assert_eq!(f.modulus(), &[1, 2, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldTower::new(4, 1, 2, 1).unwrap_err(), Error::NonPrime(4));
        assert_eq!(
            FieldTower::new(2, 1, 4, 2).unwrap_err(),
            Error::GcdViolation { m: 2, n: 4 }
        );
        assert!(matches!(
            FieldTower::new(2, 1, 21, 1).unwrap_err(),
            Error::FieldTooLarge { .. }
        ));
        let f8 = FieldTower::new(2, 1, 3, 2).unwrap();
        let a = f8.generator();
        assert_eq!(f8.sigma(a), f8.pow(a, 4));
    }

    #[test]
    fn tables_agree_with_schoolbook() {
        for (p, e, n) in [
            (2, 1, 3),
            (3, 1, 2),
            (3, 1, 3),
            (2, 2, 3),
            (5, 1, 2),
            (2, 1, 9),
        ] {
            let f = FieldTower::new(p, e, n, 1).unwrap();
            let step = (f.order() / 40).max(1);
            for a in (0..f.order()).step_by(step as usize) {
                for b in (0..f.order()).step_by(step as usize) {
                    let (a, b) = (Fe(a), Fe(b));
                    assert_eq!(f.mul(a, b), schoolbook_mul(&f, a, b));
                }
            }
        }
    }

    #[test]
    fn subfield_has_q_elements() {
        for (p, e, n) in [(2, 1, 3), (3, 1, 3), (2, 2, 3), (3, 2, 2), (2, 3, 2)] {
            let f = FieldTower::new(p, e, n, 1).unwrap();
            let fixed: Vec<Fe> = f
                .elements()
                .filter(|&x| f.pow(x, f.q() as u64) == x)
                .collect();
            assert_eq!(fixed.len(), f.q() as usize);
            assert_eq!(fixed, f.subfield_elements());
        }
    }

    #[test]
    fn norm_fibres() {
        for (p, e, n) in [
            (2, 1, 2),
            (2, 1, 3),
            (3, 1, 3),
            (3, 1, 2),
            (2, 2, 2),
            (5, 1, 2),
        ] {
            let f = FieldTower::new(p, e, n, 1).unwrap();
            let fibre = ((f.order() - 1) / (f.q() - 1)) as usize;
            let mut total = 0;
            for a in f.subfield_elements().into_iter().filter(|a| !a.is_zero()) {
                let class = f.norm_class(a).unwrap();
                assert_eq!(class.len(), fibre);
                total += class.len();
            }
            assert_eq!(total, f.order() as usize - 1);
            for x in f.elements() {
                assert!(f.is_in_subfield(f.norm(x)));
            }
        }
        let f4 = f4();
        assert_eq!(f4.norm_class(Fe::ONE).unwrap().len(), 3);
        assert_eq!(f4.norm_class(Fe::ZERO), Err(Error::ZeroArgument));
        assert_eq!(f4.norm_class(f4.generator()), Err(Error::NotInSubfield));
        let f27 = FieldTower::new(3, 1, 3, 1).unwrap();
        assert_eq!(f27.norm_class(Fe::ONE).unwrap().len(), 13);
        assert_eq!(f27.norm(Fe::ZERO), Fe::ZERO);
    }

    #[test]
    fn squares_and_sigma_norm_values() {
        let f9 = FieldTower::new(3, 1, 2, 1).unwrap();
        let squares = f9.nonzero_elements().filter(|&x| f9.is_square(x)).count();
        assert_eq!(squares, 4);
        assert!(f9.is_square(Fe::ZERO) && f9.is_square(Fe::ONE));
        for (p, n, m) in [
            (2, 2, 1),
            (2, 3, 1),
            (2, 3, 2),
            (3, 2, 1),
            (3, 3, 1),
            (3, 3, 2),
            (2, 5, 2),
        ] {
            let f = FieldTower::new(p, 1, n, m).unwrap();
            let image: std::collections::HashSet<Fe> =
                f.elements().map(|x| f.mul(f.sigma(x), x)).collect();
            for d in f.elements() {
                assert_eq!(
                    f.is_sigma_norm_value(d),
                    image.contains(&d),
                    "p={p} n={n} m={m}"
                );
            }
            let sq: std::collections::HashSet<Fe> = f.elements().map(|x| f.mul(x, x)).collect();
            for d in f.elements() {
                assert_eq!(f.is_square(d), sq.contains(&d));
            }
        }
        // in F_4 with m = 1 the map x ↦ x^3 sends every unit to 1
        let f4 = f4();
        let hits = f4
            .nonzero_elements()
            .filter(|&d| f4.is_sigma_norm_value(d))
            .count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn sigma_order_is_n() {
        for (p, n, m) in [(2, 3, 1), (2, 3, 2), (3, 3, 2), (2, 5, 3), (3, 2, 1)] {
            let f = FieldTower::new(p, 1, n, m).unwrap();
            for k in 1..n {
                assert!(f.elements().any(|x| f.sigma_pow(x, k as i64) != x));
            }
            assert!(f.elements().all(|x| f.sigma_pow(x, n as i64) == x));
            assert!(f.elements().all(|x| f.sigma_inv(f.sigma(x)) == x));
            assert_eq!(f.sigma(Fe::ZERO), Fe::ZERO);
            assert_eq!(f.sigma(Fe::ONE), Fe::ONE);
        }
    }

    #[test]
    fn encoding_round_trip() {
        let f = FieldTower::new(3, 1, 3, 1).unwrap();
        for x in f.elements() {
            assert_eq!(f.from_coeffs(&f.coeffs(x)).unwrap(), x);
        }
        assert!(f.elem(27).is_err());
        assert_eq!(f.from_int(-1), Fe(2));
    }

    fn arb_pair(order: u32) -> impl Strategy<Value = (u32, u32)> {
        (0..order, 0..order)
    }

    proptest! {
        #[test]
        fn sigma_is_automorphism((a, b) in arb_pair(729)) {
            let f = FieldTower::new(3, 1, 6, 5).unwrap();
            let (a, b) = (Fe(a), Fe(b));
            prop_assert_eq!(f.sigma(f.add(a, b)), f.add(f.sigma(a), f.sigma(b)));
            prop_assert_eq!(f.sigma(f.mul(a, b)), f.mul(f.sigma(a), f.sigma(b)));
            prop_assert_eq!(f.norm(f.mul(a, b)), f.mul(f.norm(a), f.norm(b)));
        }

        #[test]
        fn field_axioms((a, b) in arb_pair(1024), c in 0u32..1024) {
            let f = FieldTower::new(2, 2, 5, 2).unwrap();
            let (a, b, c) = (Fe(a), Fe(b), Fe(c));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            }
            prop_assert_eq!(f.pow(a, 1023), if a.is_zero() { Fe::ZERO } else { Fe::ONE });
        }
    }
}
