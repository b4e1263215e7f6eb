//! Order of a finite cokernel `Z^r / <columns>` computed without Smith forms.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use susp_core::classgroup::IntMatrix;

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of all `k x k` minors, `None` when they all vanish.
pub fn minors_gcd(m: &IntMatrix, k: usize) -> Option<BigInt> {
    let mut g = BigInt::zero();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect())
                .collect();
            g = g.gcd(&IntMatrix::from_rows(&sub).unwrap().det().unwrap());
        }
    }
    (!g.is_zero()).then_some(g)
}

/// Exponent of the cokernel: the ratio of the last two determinantal divisors.
pub fn exponent(m: &IntMatrix) -> Option<i64> {
    let r = m.rows();
    let top = minors_gcd(m, r)?;
    let below = if r == 1 {
        BigInt::one()
    } else {
        minors_gcd(m, r - 1)?
    };
    (top / below).to_i64()
}

/// Breadth-first search over the column lattice modulo `n`. Since `n` kills
/// the cokernel, `n Z^r` lies in the lattice and the order is
/// `n^r / |lattice mod n|`.
pub fn enumerate_order(m: &IntMatrix, n: i64) -> usize {
    let r = m.rows();
    let cols: Vec<Vec<i64>> = (0..m.cols())
        .map(|j| {
            (0..r)
                .map(|i| m.get(i, j).to_i64().unwrap().rem_euclid(n))
                .collect()
        })
        .collect();
    let start = vec![0i64; r];
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for c in &cols {
            let y: Vec<i64> = x
                .iter()
                .zip(c)
                .map(|(a, b)| (a + b).rem_euclid(n))
                .collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    (n as usize).pow(r as u32) / seen.len()
}

/// Brute-force order when the cokernel is finite with at most 24 elements
/// and the search space stays small.
pub fn order_up_to_24(m: &IntMatrix) -> Option<usize> {
    let n = exponent(m)?;
    if n > 24 {
        return None;
    }
    let space = (n as usize).checked_pow(m.rows() as u32)?;
    if space > 1 << 20 {
        return None;
    }
    let k = enumerate_order(m, n);
    (k <= 24).then_some(k)
}
