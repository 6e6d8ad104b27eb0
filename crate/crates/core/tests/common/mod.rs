#![allow(dead_code, clippy::needless_range_loop)]

use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` pairwise coprime integers in `2..=max`, ascending.
pub fn coprime_tuple<R: Rng>(rng: &mut R, count: usize, max: i64) -> Vec<i64> {
    loop {
        let mut out: Vec<i64> = Vec::with_capacity(count);
        for _ in 0..200 {
            let x = rng.gen_range(2..=max);
            if out.iter().all(|y| x.gcd(y) == 1) {
                out.push(x);
                if out.len() == count {
                    out.sort_unstable();
                    return out;
                }
            }
        }
    }
}

/// A tuple with at least two singular fibers ahead of the last slot. The
/// last slot is a random singular order or, one time in four, a regular
/// fiber.
pub fn surgery_tuple<R: Rng>(rng: &mut R, max: i64) -> Vec<i64> {
    let count = rng.gen_range(3..=4);
    let mut t = coprime_tuple(rng, count, max);
    if rng.gen_ratio(1, 4) {
        t.push(1);
    } else {
        let k = rng.gen_range(0..t.len());
        let fiber = t.remove(k);
        t.push(fiber);
    }
    t
}

/// Inverse of a unimodular integer matrix through its adjugate, using
/// cofactor expansion. Exponential in the rank; meant for rank <= 8.
pub fn cofactor_inverse(g: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = g.len();
    let m: Vec<Vec<i128>> = g.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let det = laplace_det(&m);
    assert!(det == 1 || det == -1, "not unimodular: det {det}");
    let mut inv = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[j][i] = sign * laplace_det(&minor) * det;
        }
    }
    inv
}

fn laplace_det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| (0..n).filter(|&c| c != j).map(|c| r[c]).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * laplace_det(&minor)
            })
            .sum(),
    }
}

/// d-invariant by scanning pairing vectors `c` with `c_i ≡ G_ii (mod 2)` in
/// the widened box `3 G_ii <= c_i <= −3 G_ii`, maximizing `cᵀ G⁻¹ c + rank`.
pub fn wide_box_d(g: &[Vec<i64>]) -> i64 {
    let n = g.len();
    let inv = cofactor_inverse(g);
    let lo: Vec<i64> = (0..n).map(|i| 3 * g[i][i]).collect();
    let hi: Vec<i64> = (0..n).map(|i| -3 * g[i][i]).collect();
    let mut c = lo.clone();
    let mut best = i128::MIN;
    loop {
        let mut v = 0i128;
        for i in 0..n {
            for j in 0..n {
                v += c[i] as i128 * inv[i][j] * c[j] as i128;
            }
        }
        best = best.max(v);
        let mut i = 0;
        while i < n && c[i] + 2 > hi[i] {
            c[i] = lo[i];
            i += 1;
        }
        if i == n {
            break;
        }
        c[i] += 2;
    }
    let total = best + n as i128;
    assert_eq!(total % 4, 0, "χ² + rank = {total} is not divisible by 4");
    (total / 4) as i64
}

/// d-invariant of `Σ(a_1, ..., a_n)` in the standard orientation from the
/// τ-function of the Seifert data:
/// `Δ(i) = 1 + e i − Σ ⌈i b_j / a_j⌉`, `τ(i) = Σ_{k<i} Δ(k)`,
/// `d = (K² + s)/4 − 2 min τ`, with `K` the canonical class of the
/// plumbing (`K·v = −v·v − 2`). Takes the Gram matrix and Seifert data as
/// plain integers.
pub fn tau_d(gram: &[Vec<i64>], e: i64, pairs: &[(i64, i64)]) -> i64 {
    use num_rational::Ratio;
    let n = gram.len();
    let k: Vec<Ratio<i128>> = (0..n).map(|i| Ratio::from_integer((-gram[i][i] - 2) as i128)).collect();
    // Solve G x = K by Gauss-Jordan over the rationals.
    let mut m: Vec<Vec<Ratio<i128>>> = gram
        .iter()
        .zip(&k)
        .map(|(row, ki)| row.iter().map(|&x| Ratio::from_integer(x as i128)).chain([*ki]).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| m[r][col] != Ratio::from_integer(0)).expect("singular");
        m.swap(col, p);
        let pivot = m[col][col];
        for x in m[col].iter_mut() {
            *x /= pivot;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != Ratio::from_integer(0) {
                    for c in 0..=n {
                        let sub = f * m[col][c];
                        m[r][c] -= sub;
                    }
                }
            }
        }
    }
    let k2: Ratio<i128> = (0..n).map(|i| k[i] * m[i][n]).sum();
    assert!(k2.is_integer());
    let period: i64 = pairs.iter().map(|p| p.0).product();
    let (mut tau, mut min_tau) = (0i64, 0i64);
    for i in 0..4 * period + 8 {
        let delta = 1 + e * i - pairs.iter().map(|&(a, b)| Integer::div_ceil(&(i * b), &a)).sum::<i64>();
        tau += delta;
        min_tau = min_tau.min(tau);
    }
    let top = k2.to_integer() as i64 + n as i64;
    assert_eq!(top % 4, 0);
    top / 4 - 2 * min_tau
}
