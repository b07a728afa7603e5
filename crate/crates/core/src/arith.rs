//! Big-integer and big-rational scalars plus the handful of vector helpers
//! every other module leans on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVector = Vec<Int>;
pub type RatVector = Vec<Rat>;

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn ivec(xs: &[i64]) -> IntVector {
    xs.iter().map(|&x| Int::from(x)).collect()
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn to_rat(x: &Int) -> Rat {
    Rat::from_integer(x.clone())
}

pub fn to_rat_vec(v: &[Int]) -> RatVector {
    v.iter().map(to_rat).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

pub fn rat_dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// gcd of all entries; zero for the zero vector.
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divide out the content, keeping the direction.
pub fn primitive(v: &[Int]) -> IntVector {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Primitive representative of the line through `v` whose first nonzero
/// coordinate is positive.
pub fn line_representative(v: &[Int]) -> IntVector {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

/// Smallest positive integer multiple of a rational vector, made primitive.
pub fn clear_denominators(v: &[Rat]) -> IntVector {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scaled: IntVector = v.iter().map(|x| (x * to_rat(&l)).to_integer()).collect();
    primitive(&scaled)
}

pub fn neg_vec(v: &[Int]) -> IntVector {
    v.iter().map(|x| -x).collect()
}

pub fn add_vec(a: &[Int], b: &[Int]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Int], b: &[Int]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Int, v: &[Int]) -> IntVector {
    v.iter().map(|x| c * x).collect()
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(x: &Int) -> Int {
    assert!(!x.is_negative(), "isqrt of a negative number");
    x.sqrt()
}

/// Exact square root if `x` is a perfect square.
pub fn exact_sqrt(x: &Int) -> Option<Int> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

pub fn floor_rat(x: &Rat) -> Int {
    x.floor().to_integer()
}

pub fn ceil_rat(x: &Rat) -> Int {
    x.ceil().to_integer()
}

/// Floor of sqrt(x) for a nonnegative rational.
pub fn floor_sqrt_rat(x: &Rat) -> Int {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    // floor(sqrt(p/q)) = floor(sqrt(floor(p/q))) for nonnegative rationals
    isqrt(&floor_rat(x))
}

pub fn to_strings(v: &[Int]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}
