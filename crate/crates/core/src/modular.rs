//! Multimodular column elimination with exact certification.
//!
//! Pivots and dependency coefficients are computed modulo word-sized primes,
//! lifted by CRT and rational reconstruction, then checked over `Q`. A mod-p
//! rank never exceeds the rational rank, and verified rational dependencies
//! bound it from above, so an accepted answer is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::SparseVec;
use crate::Q;

// primes stay below 2^31, so products fit in a u64
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin below `2^31`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^31`, in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    let mut candidate = (1u64 << 31) - 1;
    std::iter::from_fn(move || {
        while !is_prime(candidate) {
            candidate -= 2;
        }
        let p = candidate;
        candidate -= 2;
        Some(p)
    })
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("reduced below p")
}

fn reduce(c: &Q, p: u64) -> Option<u64> {
    let d = reduce_int(c.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(reduce_int(c.numer(), p), inv_mod(d, p), p))
}

type ModVec = Vec<(usize, u64)>;

/// `a − λ b` modulo `p`.
fn axpy_mod(a: &ModVec, lambda: u64, b: &ModVec, p: u64) -> ModVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, (p - mul_mod(lambda, b[j].1, p)) % p));
            j += 1;
        } else {
            let v = (a[i].1 + p - mul_mod(lambda, b[j].1, p)) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct ModResult {
    pivots: Vec<usize>,
    /// For each dependent column `j`: kernel vector with entry 1 at `j`.
    kernel: Vec<(usize, ModVec)>,
}

fn eliminate_mod(columns: &[SparseVec], p: u64) -> Option<ModResult> {
    let mut by_row: std::collections::HashMap<usize, usize> = Default::default();
    let mut store: Vec<(ModVec, ModVec)> = Vec::new();
    let mut pivots = Vec::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v: ModVec = Vec::with_capacity(col.len());
        for (i, c) in col {
            let r = reduce(c, p)?;
            if r != 0 {
                v.push((*i, r));
            }
        }
        let mut tag: ModVec = vec![(j, 1)];
        while let Some(&(row, lead)) = v.first() {
            let Some(&k) = by_row.get(&row) else { break };
            let (pv, pt) = &store[k];
            v = axpy_mod(&v, lead, pv, p);
            tag = axpy_mod(&tag, lead, pt, p);
        }
        match v.first() {
            None => kernel.push((j, tag)),
            Some(&(row, lead)) => {
                let inv = inv_mod(lead, p);
                let v = v.into_iter().map(|(i, c)| (i, mul_mod(c, inv, p))).collect();
                let t = tag.into_iter().map(|(i, c)| (i, mul_mod(c, inv, p))).collect();
                by_row.insert(row, store.len());
                store.push((v, t));
                pivots.push(j);
            }
        }
    }
    Some(ModResult { pivots, kernel })
}

/// Smallest `r/s ≡ a (mod m)` with `|r|, s ≤ sqrt(m/2)`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    let value = Q::new(r1, s1);
    // r/s must reduce back to a (it does unless gcd(s, m) ≠ 1)
    if value.denom().gcd(m) != BigInt::one() {
        return None;
    }
    Some(value)
}

/// Greedy left-to-right pivots and one kernel vector per dependent column.
#[derive(Clone, Debug)]
pub struct ColumnDecomposition {
    pub pivots: Vec<usize>,
    /// `(j, v)` with `A v = 0`, `v_j = 1` and `v` supported on `j` and earlier pivots.
    pub kernel: Vec<(usize, SparseVec)>,
}

impl ColumnDecomposition {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Columns with denominators cleared: `col_j = int_j / den_j`.
struct IntegerColumns {
    den: Vec<BigInt>,
    int: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerColumns {
    fn new(columns: &[SparseVec]) -> Self {
        let mut den = Vec::with_capacity(columns.len());
        let mut int = Vec::with_capacity(columns.len());
        for col in columns {
            let d = col.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
            int.push(col.iter().map(|(i, c)| (*i, c.numer() * (&d / c.denom()))).collect());
            den.push(d);
        }
        IntegerColumns { den, int }
    }

    /// Exact check of `A v = 0` in integer arithmetic.
    fn annihilates(&self, nrows: usize, v: &SparseVec) -> bool {
        let w: Vec<(usize, Q)> = v.iter().map(|(j, c)| (*j, c / &self.den[*j])).collect();
        let l = w.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut acc = vec![BigInt::zero(); nrows];
        for (j, c) in &w {
            let scaled = c.numer() * (&l / c.denom());
            for (i, a) in &self.int[*j] {
                acc[*i] += &scaled * a;
            }
        }
        acc.iter().all(Zero::is_zero)
    }
}

const MAX_PRIMES: usize = 800;

/// Exact greedy column decomposition. Falls back to exact rational
/// elimination when the modular lift does not certify within the prime budget.
pub fn decompose(nrows: usize, columns: &[SparseVec]) -> ColumnDecomposition {
    if let Some(d) = decompose_modular(nrows, columns) {
        return d;
    }
    decompose_exact(columns)
}

pub(crate) fn decompose_exact(columns: &[SparseVec]) -> ColumnDecomposition {
    use crate::linalg::{ColumnEchelon, Pushed};
    let mut ech = ColumnEchelon::new();
    let mut pivots = Vec::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        match ech.push(col.clone(), vec![(j, Q::one())]) {
            Pushed::Independent => pivots.push(j),
            Pushed::Dependent(v) => kernel.push((j, v)),
        }
    }
    ColumnDecomposition { pivots, kernel }
}

fn decompose_modular(nrows: usize, columns: &[SparseVec]) -> Option<ColumnDecomposition> {
    let mut pivots: Vec<usize> = Vec::new();
    // residues[d][pos]: dependency d, coefficient on support[d][pos]
    let mut support: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<SparseVec>> = None;
    let mut used = 0;
    let mut integer: Option<IntegerColumns> = None;
    for p in primes() {
        if used == MAX_PRIMES {
            return None;
        }
        let Some(res) = eliminate_mod(columns, p) else { continue };
        if used == 0 || res.pivots.len() > pivots.len() {
            // first prime, or the earlier primes were unlucky
            pivots = res.pivots.clone();
            support = res
                .kernel
                .iter()
                .map(|(j, v)| {
                    let mut s: Vec<usize> = pivots.iter().copied().filter(|&i| i < *j).collect();
                    s.push(*j);
                    debug_assert!(v.iter().all(|(i, _)| s.contains(i)));
                    (*j, s)
                })
                .collect();
            residues = support.iter().map(|(_, s)| vec![BigInt::zero(); s.len()]).collect();
            modulus = BigInt::one();
            previous = None;
            used = 0;
        } else if res.pivots != pivots {
            used += 1;
            continue;
        }
        used += 1;
        let pb = BigInt::from(p);
        let m_inv = BigInt::from(inv_mod(reduce_int(&modulus, p), p));
        for ((_, s), (res_vec, (_, v))) in support.iter().zip(residues.iter_mut().zip(&res.kernel)) {
            let mut vi = v.iter().peekable();
            for (pos, idx) in s.iter().enumerate() {
                let r = match vi.peek() {
                    Some((i, c)) if i == idx => {
                        let c = *c;
                        vi.next();
                        c
                    }
                    _ => 0,
                };
                // CRT: x ≡ old (mod modulus), x ≡ r (mod p)
                let old = &res_vec[pos];
                let delta = (BigInt::from(r) - BigInt::from(reduce_int(old, p))).mod_floor(&pb);
                let t = (delta * &m_inv).mod_floor(&pb);
                res_vec[pos] = old + &modulus * t;
            }
        }
        modulus *= &pb;
        let lifted: Option<Vec<SparseVec>> = residues
            .iter()
            .zip(&support)
            .map(|(rv, (_, s))| {
                rv.iter()
                    .zip(s)
                    .map(|(a, &i)| rational_reconstruction(a, &modulus).map(|q| (i, q)))
                    .filter(|r| r.as_ref().is_none_or(|(_, q)| !q.is_zero()))
                    .collect()
            })
            .collect();
        let Some(lifted) = lifted else {
            previous = None;
            continue;
        };
        if previous.as_ref() == Some(&lifted) || support.is_empty() {
            let ints = integer.get_or_insert_with(|| IntegerColumns::new(columns));
            if lifted.iter().all(|v| ints.annihilates(nrows, v)) {
                let kernel = support.iter().map(|(j, _)| *j).zip(lifted).collect();
                return Some(ColumnDecomposition { pivots, kernel });
            }
        }
        previous = Some(lifted);
    }
    None
}
