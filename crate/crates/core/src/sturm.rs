//! Exact real-root isolation over Q with Sturm sequences.

use num_traits::{One, Signed, Zero};

use crate::field::{rational_sign, Rational, Rationals};
use crate::poly::UPoly;

/// p, p', -rem(p, p'), ... down to a nonzero constant.
pub fn sturm_sequence(p: &UPoly<Rationals>) -> Vec<UPoly<Rationals>> {
    let mut seq = vec![p.clone()];
    if p.degree().unwrap_or(0) == 0 {
        return seq;
    }
    seq.push(p.derivative());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    seq
}

fn sign_changes(seq: &[UPoly<Rationals>], x: &Rational) -> usize {
    let signs: Vec<i32> = seq.iter().map(|q| rational_sign(&q.eval(x))).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the half-open interval (a, b].
pub fn count_roots_in(p: &UPoly<Rationals>, a: &Rational, b: &Rational) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    sign_changes(&seq, a).saturating_sub(sign_changes(&seq, b))
}

/// Every real root has absolute value below this (Cauchy) bound.
pub fn root_bound(p: &UPoly<Rationals>) -> Rational {
    let lc = p.lc();
    let m = p.coeffs().iter().map(|c| (c / &lc).abs()).fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

pub fn real_root_count(p: &UPoly<Rationals>) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let b = root_bound(p);
    count_roots_in(p, &-b.clone(), &b)
}

fn squarefree(p: &UPoly<Rationals>) -> UPoly<Rationals> {
    let g = UPoly::gcd(p, &p.derivative());
    p.div_exact(&g).expect("gcd divides")
}

/// Disjoint intervals (a, b], each containing exactly one real root, in
/// increasing order.
pub fn isolate_real_roots(p: &UPoly<Rationals>) -> Vec<(Rational, Rational)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let p = squarefree(p);
    let seq = sturm_sequence(&p);
    let b = root_bound(&p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let k = sign_changes(&seq, &lo).saturating_sub(sign_changes(&seq, &hi));
        match k {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort();
    out
}

/// Halves an isolating interval of a squarefree `p` until it is narrower than `width`.
pub fn refine(p: &UPoly<Rationals>, interval: &(Rational, Rational), width: &Rational) -> (Rational, Rational) {
    let (mut lo, mut hi) = interval.clone();
    let two = Rational::from_integer(2.into());
    while &(&hi - &lo) >= width {
        let mid = (&lo + &hi) / &two;
        if p.eval(&mid).is_zero() {
            return (mid.clone(), mid);
        }
        if count_roots_in(p, &lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Sign of h at the root of squarefree `p` isolated in `interval`, assuming
/// h does not vanish there.
pub fn sign_at_root(p: &UPoly<Rationals>, interval: &(Rational, Rational), h: &UPoly<Rationals>) -> i32 {
    let (mut lo, mut hi) = interval.clone();
    if lo == hi {
        return rational_sign(&h.eval(&lo));
    }
    let two = Rational::from_integer(2.into());
    // shrink until h has no root in (lo, hi] and h(lo) != 0
    loop {
        if count_roots_in(h, &lo, &hi) == 0 && !h.eval(&lo).is_zero() {
            return rational_sign(&h.eval(&hi));
        }
        let mid = (&lo + &hi) / &two;
        if p.eval(&mid).is_zero() {
            return rational_sign(&h.eval(&mid));
        }
        if count_roots_in(p, &lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Floating-point midpoint of an isolating interval, for plotting only.
pub fn approximate_root(p: &UPoly<Rationals>, interval: &(Rational, Rational)) -> f64 {
    use num_traits::ToPrimitive;
    let width = Rational::new(1.into(), (1u64 << 40).into());
    let (lo, hi) = refine(p, interval, &width);
    ((lo + hi) / Rational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
}
