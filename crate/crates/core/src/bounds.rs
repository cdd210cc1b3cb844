//! Closed-form bounds on l(T), hc(T) and ∇(L(T)).
//!
//! Everything is exact integer arithmetic, generic over the integer type so
//! the same formulas run on `i64` for sweeps and on big integers when the
//! perfect k-ary values outgrow a machine word. Fractional k-ary bounds are
//! returned as exact rationals.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed};
use thiserror::Error;

/// Integer scalar accepted by the bound formulas.
pub trait Scalar: Integer + Signed + Clone + FromPrimitive + std::fmt::Debug + std::fmt::Display {}

impl<T> Scalar for T where T: Integer + Signed + Clone + FromPrimitive + std::fmt::Debug + std::fmt::Display {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("diameter/path length {0} is below 4")]
    LengthTooSmall(String),
    #[error("n = {n} is below the minimum {min}")]
    TooFewVertices { n: String, min: String },
    #[error("k = {0} must be at least 2")]
    BadArity(String),
    #[error("n = {n} is not 1 mod k = {k}")]
    NotKary { n: String, k: String },
    #[error("n = {n} is not the order of a perfect {k}-ary tree")]
    NotPerfect { n: String, k: String },
    #[error("height must be at least 1")]
    BadHeight,
}

fn lit<T: Scalar>(x: i64) -> T {
    T::from_i64(x).expect("small literal fits every scalar")
}

fn floor_div<T: Scalar>(a: T, b: T) -> T {
    a.div_floor(&b)
}

fn ceil_div<T: Scalar>(a: T, b: T) -> T {
    a.div_ceil(&b)
}

fn is_even<T: Scalar>(x: &T) -> bool {
    x.is_even()
}

fn require_length<T: Scalar>(d: &T) -> Result<(), BoundsError> {
    if *d < lit(4) {
        Err(BoundsError::LengthTooSmall(d.to_string()))
    } else {
        Ok(())
    }
}

fn require_min<T: Scalar>(n: &T, min: T) -> Result<(), BoundsError> {
    if *n < min {
        Err(BoundsError::TooFewVertices { n: n.to_string(), min: min.to_string() })
    } else {
        Ok(())
    }
}

/// Upper bound on l(T) over trees of diameter `d` as a function of `n`:
/// `⌊((d−2)n+2)/(d−1)⌋` for even `d`, `⌊((d−3)n+4)/(d−2)⌋` for odd `d`.
fn diameter_upper<T: Scalar>(n: &T, d: &T) -> T {
    if is_even(d) {
        floor_div((d.clone() - lit(2)) * n.clone() + lit(2), d.clone() - lit(1))
    } else {
        floor_div((d.clone() - lit(3)) * n.clone() + lit(4), d.clone() - lit(2))
    }
}

/// `(d, upper)` bounds on l(T) for a tree on `n` vertices with diameter
/// `d ≥ 4`.
pub fn diam_bounds_l<T: Scalar>(n: T, d: T) -> Result<(T, T), BoundsError> {
    require_length(&d)?;
    require_min(&n, d.clone() + lit(1))?;
    let upper = diameter_upper(&n, &d);
    Ok((d, upper))
}

/// Sharper upper bound for odd `d = 2r+1`: when `n ≤ 4r+1` at most one vertex
/// can sit at depth `r+1`, giving `⌊((2r−2)n+3)/(2r−1)⌋`. Equal to the plain
/// bound for even `d` and for `n ≥ 4r+2`.
pub fn diam_upper_l_fine<T: Scalar>(n: T, d: T) -> Result<T, BoundsError> {
    let (_, upper) = diam_bounds_l(n.clone(), d.clone())?;
    if is_even(&d) {
        return Ok(upper);
    }
    let r = (d.clone() - lit(1)) / lit(2);
    if n <= lit::<T>(4) * r.clone() + lit(1) {
        let num = (lit::<T>(2) * r.clone() - lit(2)) * n + lit(3);
        Ok(floor_div(num, lit::<T>(2) * r - lit(1)))
    } else {
        Ok(upper)
    }
}

/// Bounds on ∇(L(T)) for diameter `d ≥ 4`: `⌈(n−d−1)/(d−1)⌉` (even) or
/// `⌈(n−d−2)/(d−2)⌉` (odd) below, `n−d−1` above.
pub fn diam_bounds_decycling<T: Scalar>(n: T, d: T) -> Result<(T, T), BoundsError> {
    require_length(&d)?;
    require_min(&n, d.clone() + lit(1))?;
    let lower = if is_even(&d) {
        ceil_div(n.clone() - d.clone() - lit(1), d.clone() - lit(1))
    } else {
        ceil_div(n.clone() - d.clone() - lit(2), d.clone() - lit(2))
    };
    Ok((lower, n - d - lit(1)))
}

/// `⌈(out + Σex)/2⌉ ≤ hc(T) ≤ out − 1`.
pub fn hc_bounds<T: Scalar>(out: T, ex_sum: T) -> (T, T) {
    (ceil_div(out.clone() + ex_sum, lit(2)), out - lit(1))
}

/// `⌈(out + Σex)/2⌉ − 1 ≤ ∇(L(T)) ≤ out − 2`.
pub fn hc_decycling_bounds<T: Scalar>(out: T, ex_sum: T) -> (T, T) {
    let (lo, hi) = hc_bounds(out, ex_sum);
    (lo - lit(1), hi - lit(1))
}

fn require_kary<T: Scalar>(n: &T, k: &T) -> Result<(), BoundsError> {
    if *k < lit(2) {
        return Err(BoundsError::BadArity(k.to_string()));
    }
    require_min(n, k.clone() + lit(1))?;
    if !n.mod_floor(k).is_one() {
        return Err(BoundsError::NotKary { n: n.to_string(), k: k.to_string() });
    }
    Ok(())
}

/// `(n+k−1)/k ≤ l(T) ≤ (2n−2)/k` for a k-ary tree on `n` vertices.
pub fn kary_bounds_l<T: Scalar>(n: T, k: T) -> Result<(Ratio<T>, Ratio<T>), BoundsError> {
    require_kary(&n, &k)?;
    let lower = Ratio::new(n.clone() + k.clone() - lit(1), k.clone());
    let upper = Ratio::new(lit::<T>(2) * n - lit(2), k);
    Ok((lower, upper))
}

/// `((k−2)n−k+2)/k ≤ ∇(L(T)) ≤ ((k−1)n−2k+1)/k` for a k-ary tree.
pub fn kary_bounds_decycling<T: Scalar>(n: T, k: T) -> Result<(Ratio<T>, Ratio<T>), BoundsError> {
    require_kary(&n, &k)?;
    let lower = Ratio::new((k.clone() - lit(2)) * n.clone() - k.clone() + lit(2), k.clone());
    let upper = Ratio::new((k.clone() - lit(1)) * n - lit::<T>(2) * k.clone() + lit(1), k);
    Ok((lower, upper))
}

/// Height `h` (number of levels) of the perfect k-ary tree with `n` vertices.
pub fn perfect_kary_height<T: Scalar>(n: &T, k: &T) -> Result<u32, BoundsError> {
    if *k < lit(2) {
        return Err(BoundsError::BadArity(k.to_string()));
    }
    let mut total = T::zero();
    let mut level = T::one();
    let mut h = 0u32;
    while total < *n {
        total = total + level.clone();
        level = level * k.clone();
        h += 1;
    }
    if total == *n && h >= 1 {
        Ok(h)
    } else {
        Err(BoundsError::NotPerfect { n: n.to_string(), k: k.to_string() })
    }
}

fn sign_of_height<T: Scalar>(h: u32) -> T {
    if h.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

/// Closed form `l = (2n − 1 + (−1)^h)/(k+1)` for the perfect k-ary tree on
/// `n` vertices.
pub fn perfect_kary_l<T: Scalar>(n: T, k: T) -> Result<T, BoundsError> {
    let h = perfect_kary_height(&n, &k)?;
    let num = lit::<T>(2) * n - lit(1) + sign_of_height(h);
    let (q, r) = num.div_rem(&(k + lit(1)));
    debug_assert!(r.is_zero());
    Ok(q)
}

/// `f₁ = 0`, `f₂ = 2`, `f_h = (k−1)f_{h−1} + k·f_{h−2} + 2`.
pub fn perfect_kary_recurrence<T: Scalar>(k: T, h: u32) -> Result<T, BoundsError> {
    if k < lit(2) {
        return Err(BoundsError::BadArity(k.to_string()));
    }
    if h == 0 {
        return Err(BoundsError::BadHeight);
    }
    let (mut prev, mut cur) = (T::zero(), T::zero());
    for step in 1..=h {
        let next = match step {
            1 => T::zero(),
            2 => lit(2),
            _ => (k.clone() - lit(1)) * cur.clone() + k.clone() * prev.clone() + lit(2),
        };
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `∇(L(T)) = ((k−1)n − k − (−1)^h)/(k+1)` for the perfect k-ary tree on `n`
/// vertices; this equals `n − 1 − l(T)`.
pub fn perfect_kary_decycling<T: Scalar>(n: T, k: T) -> Result<T, BoundsError> {
    let h = perfect_kary_height(&n, &k)?;
    let num = (k.clone() - lit(1)) * n - k.clone() - sign_of_height(h);
    let (q, r) = num.div_rem(&(k + lit(1)));
    debug_assert!(r.is_zero());
    Ok(q)
}

/// l of the k-ary caterpillar (one internal node per level) on `n` vertices:
/// `(2n−2)/k` for `k ≥ 3`; for `k = 2`, `3(n−1)/4` when `(n−1)/2` is even and
/// `(3n−1)/4` otherwise.
pub fn kary_caterpillar_l<T: Scalar>(n: T, k: T) -> Result<T, BoundsError> {
    require_kary(&n, &k)?;
    if k > lit(2) {
        return Ok((lit::<T>(2) * n - lit(2)) / k);
    }
    let internal = (n.clone() - lit(1)) / lit(2);
    if internal.is_even() {
        Ok(lit::<T>(3) * (n - lit(1)) / lit(4))
    } else {
        Ok((lit::<T>(3) * n - lit(1)) / lit(4))
    }
}

/// Bounds on ∇(L(G)) for a connected graph with `n` vertices, `m` edges and
/// longest path length `p ≥ 4`: `m − U(n,p) ≤ ∇(L(G)) ≤ m − p`, where `U` is
/// the diameter upper bound on l with `p` in place of the diameter.
pub fn longest_path_decycling_bounds<T: Scalar>(n: T, m: T, p: T) -> Result<(T, T), BoundsError> {
    require_length(&p)?;
    require_min(&n, p.clone() + lit(1))?;
    let upper_l = diameter_upper(&n, &p);
    Ok((m.clone() - upper_l, m - p))
}

/// `∇(L(G)) ≥ m − n + 1` for any graph.
pub fn line_graph_decycling_lower<T: Scalar>(n: T, m: T) -> T {
    m - n + lit(1)
}
