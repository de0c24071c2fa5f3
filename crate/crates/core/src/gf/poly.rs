//! Dense polynomials over F_p, coefficients stored low degree first.
//!
//! Only what field construction needs: reduction, modular powers, gcd and
//! the Rabin irreducibility test.

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

#[cfg(test)]
pub(crate) fn trim_vec(mut a: Vec<u32>) -> Vec<u32> {
    trim(&mut a);
    a
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod_p(a, p as u64 - 2, p)
}

pub(crate) fn pow_mod_p(base: u32, mut exp: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut b = base as u64 % p;
    let mut acc = 1u64 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `f` (f non-zero).
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let df = degree(f).expect("modulus must be non-zero");
    let lead_inv = inv_mod_p(f[df], p) as u64;
    let p64 = p as u64;
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let coef = r[dr] as u64 * lead_inv % p64;
        let shift = dr - df;
        for (i, &c) in f[..=df].iter().enumerate() {
            let sub = coef * c as u64 % p64;
            r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn powmod(base: &[u32], mut exp: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &b, f, p);
        }
        b = mulmod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out: Vec<u32> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    // monic representative
    if let Some(&lead) = x.last() {
        let inv = inv_mod_p(lead, p) as u64;
        for c in x.iter_mut() {
            *c = (*c as u64 * inv % p as u64) as u32;
        }
    }
    x
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// Rabin's test: f of degree k is irreducible iff x^{p^k} = x mod f and
/// gcd(x^{p^{k/r}} - x, f) = 1 for every prime r dividing k.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = match degree(f) {
        Some(k) if k >= 1 => k,
        _ => return false,
    };
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    // frob[i] = x^{p^i} mod f
    let mut frob = Vec::with_capacity(k + 1);
    frob.push(rem(&x, f, p));
    for i in 1..=k {
        let next = powmod(&frob[i - 1], p as u64, f, p);
        frob.push(next);
    }
    if sub(&frob[k], &frob[0], p).iter().any(|&c| c != 0) {
        return false;
    }
    for r in prime_factors(k as u64) {
        let g = gcd(&sub(&frob[k / r as usize], &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The monic irreducible polynomial of degree `k` whose lower coefficients,
/// read as the integer sum c_i p^i, are smallest.
pub(crate) fn least_irreducible(p: u32, k: u32) -> Option<Vec<u32>> {
    let count = (p as u64).checked_pow(k)?;
    for tail in 0..count {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut t = tail;
        for _ in 0..k {
            f.push((t % p as u64) as u32);
            t /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return Some(f);
        }
    }
    None
}
