//! Dense integer polynomials used internally for gcd and exact division.
//!
//! Coefficients are ascending; a trimmed vector has a nonzero last entry and
//! the zero polynomial is empty.

use dashu_int::ops::{DivRem, Gcd, UnsignedAbs};
use dashu_int::{IBig, Sign, UBig};

pub(crate) fn is_negative(x: &IBig) -> bool {
    x.sign() == Sign::Negative && !x.is_zero()
}

pub(crate) fn gcd(a: &IBig, b: &IBig) -> IBig {
    if a.is_zero() {
        return IBig::from(b.unsigned_abs());
    }
    if b.is_zero() {
        return IBig::from(a.unsigned_abs());
    }
    IBig::from(a.gcd(b))
}

pub(crate) fn lcm(a: &UBig, b: &UBig) -> UBig {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    let g = a.gcd(b);
    a / g * b
}

pub(crate) fn trim(v: &mut Vec<IBig>) {
    while v.last().is_some_and(IBig::is_zero) {
        v.pop();
    }
}

pub(crate) fn content(v: &[IBig]) -> IBig {
    let mut g = IBig::ZERO;
    for c in v {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive(mut v: Vec<IBig>) -> Vec<IBig> {
    trim(&mut v);
    let Some(lead) = v.last() else { return v };
    let mut g = content(&v);
    if is_negative(lead) {
        g = -g;
    }
    if !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

pub(crate) fn mul(a: &[IBig], b: &[IBig]) -> Vec<IBig> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![IBig::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// A pseudo-remainder of `a` by `b`: some `c * a mod b` with `c` a nonzero
/// integer. Only its primitive part is meaningful.
pub(crate) fn prem(a: &[IBig], b: &[IBig]) -> Vec<IBig> {
    debug_assert!(!b.is_empty());
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let g = gcd(&lr, lb);
        let mr = lb / &g;
        let mb = &lr / &g;
        for c in r.iter_mut() {
            *c *= &mr;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] -= &mb * bc;
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

/// Exact quotient `a / b` over the integers. Returns `None` if `b` does not
/// divide `a` in `Z[x]`.
pub(crate) fn exact_div(a: &[IBig], b: &[IBig]) -> Option<Vec<IBig>> {
    debug_assert!(!b.is_empty());
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(r);
    }
    if r.len() <= db {
        return None;
    }
    let mut q = vec![IBig::ZERO; r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let (qc, rem) = (&r[dr]).div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] -= &qc * bc;
        }
        q[shift] = qc;
        trim(&mut r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

/// Primitive gcd of two integer polynomials (positive leading coefficient).
pub(crate) fn poly_gcd(a: &[IBig], b: &[IBig]) -> Vec<IBig> {
    let mut a = primitive(a.to_vec());
    let mut b = primitive(b.to_vec());
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 {
            return vec![IBig::ONE];
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        a = b;
        b = primitive(r);
    }
}
