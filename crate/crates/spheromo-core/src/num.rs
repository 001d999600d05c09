//! Scalar aliases and helpers for exact arithmetic.

use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(int(n), int(d))
}

pub fn vec_rat(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&n| rat_int(n)).collect()
}

pub fn vec_int(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&n| int(n)).collect()
}

/// Parse "p", "-p" or "p/q" (q > 0 not required; q = 0 is an error).
pub fn rat_from_str(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err(String::from("empty rational"));
    }
    let parse_int = |t: &str| -> Result<Int, String> {
        t.trim()
            .parse::<Int>()
            .map_err(|_| alloc::format!("malformed integer `{t}`"))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(alloc::format!("zero denominator in `{s}`"));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Render without spaces: "p" for integers, "p/q" otherwise.
pub fn rat_to_string(x: &Rat) -> String {
    if x.is_integer() {
        alloc::format!("{}", x.numer())
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn vec_to_string(v: &[Rat]) -> String {
    let mut out = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&rat_to_string(x));
    }
    out.push(')');
    out
}

pub fn int_vec_to_string(v: &[Int]) -> String {
    let mut out = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&alloc::format!("{x}"));
    }
    out.push(')');
    out
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += Rat::from_integer(x.clone()) * y;
    }
    acc
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Rat, v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| c * x).collect()
}

pub fn int_to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Least common multiple of the denominators of `v` (1 for an empty slice).
pub fn denominator_lcm(v: &[Rat]) -> Int {
    let mut l = Int::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    l
}

/// Scale a nonzero rational vector to a primitive integer vector pointing the
/// same way: clear denominators, divide by the gcd of the entries.
pub fn primitive_vector(v: &[Rat]) -> Vec<Int> {
    assert!(!is_zero_vec(v), "primitive_vector on zero vector");
    let l = denominator_lcm(v);
    let ints: Vec<Int> = v
        .iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// True if every entry is an integer with gcd 1.
pub fn is_primitive_int_coords(coords: &[Rat]) -> bool {
    if coords.iter().any(|c| !c.is_integer()) {
        return false;
    }
    let mut g = Int::zero();
    for c in coords {
        g = g.gcd(c.numer());
    }
    g.is_one()
}

/// Total lexicographic order on rational vectors.
pub fn cmp_vec(a: &[Rat], b: &[Rat]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.cmp(y);
        if c != core::cmp::Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

pub fn cmp_int_vec(a: &[Int], b: &[Int]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.cmp(y);
        if c != core::cmp::Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

/// All `k`-element index subsets of `0..n` in lexicographic order.
/// `k = 0` yields a single empty subset.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] + (k - i) < n {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn abs_int(x: &Int) -> Int {
    x.abs()
}
