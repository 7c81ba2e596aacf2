//! Type-D root and weight combinatorics: Weyl dimension, Freudenthal
//! weight multiplicities, character arithmetic, the Pieri-type tensor rule
//! for symmetric powers of the `sp`-standard module, and the Helgason
//! fixed-vector criteria.

use std::collections::{BTreeMap, HashMap, HashSet};

use num::{BigInt, One, Zero};

use crate::weight::{Half, Weight};
use crate::{Error, Result};

/// The root system `D_n`: positive roots `e_i ± e_j` (`i < j`) and
/// `rho = (n-1, n-2, ..., 1, 0)`.
#[derive(Debug, Clone)]
pub struct RootSystemD {
    pub n: usize,
    pub positive_roots: Vec<Weight>,
    pub rho: Weight,
}

impl RootSystemD {
    pub fn new(n: usize) -> Result<RootSystemD> {
        if n < 2 {
            return Err(Error::Invalid(format!("rank must be >= 2, got {n}")));
        }
        let mut positive_roots = Vec::with_capacity(n * (n - 1));
        for i in 0..n {
            for j in (i + 1)..n {
                for sign in [1i64, -1] {
                    let mut c = vec![0i64; n];
                    c[i] = 1;
                    c[j] = sign;
                    positive_roots.push(Weight::integral(&c));
                }
            }
        }
        let rho = Weight::integral(&(0..n).map(|i| (n - 1 - i) as i64).collect::<Vec<_>>());
        Ok(RootSystemD {
            n,
            positive_roots,
            rho,
        })
    }
}

/// `is_dominant`: `a_1 >= a_2 >= ... >= a_{n-1} >= |a_n|`.
pub fn is_dominant(w: &Weight) -> bool {
    w.is_dominant()
}

/// Weyl dimension of the irreducible with highest weight `lambda`,
/// `prod_{alpha>0} <lambda+rho, alpha> / <rho, alpha>`, computed exactly.
pub fn weyl_dim(lambda: &Weight, rs: &RootSystemD) -> Result<u128> {
    if lambda.rank() != rs.n {
        return Err(Error::RankMismatch {
            expected: rs.n,
            got: lambda.rank(),
        });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let lr = lambda.add(&rs.rho);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..rs.n {
        for j in (i + 1)..rs.n {
            for sign in [1i64, -1] {
                // doubled coordinates; the common factor of 2 cancels
                num *= BigInt::from(lr.coord(i).doubled() + sign * lr.coord(j).doubled());
                den *= BigInt::from(rs.rho.coord(i).doubled() + sign * rs.rho.coord(j).doubled());
            }
        }
    }
    let (q, r) = num::Integer::div_rem(&num, &den);
    assert!(r.is_zero(), "Weyl dimension must be an exact integer");
    use num::ToPrimitive;
    q.to_u128()
        .ok_or_else(|| Error::Capacity("Weyl dimension overflows u128".into()))
}

/// A truncation of a formal character: weight -> multiplicity, complete on
/// the region `sum |a_i| <= cutoff` (doubled).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CharacterTable {
    pub entries: BTreeMap<Weight, u64>,
    /// Doubled `sum |a_i|` bound inside which the table is complete.
    pub cutoff: i64,
}

impl CharacterTable {
    pub fn mult(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.entries.values().map(|&m| m as u128).sum()
    }

    /// Pointwise product of characters (convolution of weight multisets).
    pub fn product(&self, other: &CharacterTable) -> CharacterTable {
        let mut entries: BTreeMap<Weight, u64> = BTreeMap::new();
        for (w1, m1) in &self.entries {
            for (w2, m2) in &other.entries {
                *entries.entry(w1.add(w2)).or_insert(0) += m1 * m2;
            }
        }
        let cutoff = self.cutoff + other.cutoff;
        CharacterTable { entries, cutoff }
    }
}

/// Full weight multiplicity table of `V(lambda)` by Freudenthal's recursion.
///
/// The recursion runs over dominant weights only, looking up arbitrary
/// weights through their dominant Weyl-chamber representative; the full
/// table is produced by expanding each dominant weight to its orbit.
pub fn freudenthal(lambda: &Weight, rs: &RootSystemD, d_char: u128) -> Result<CharacterTable> {
    let dim = weyl_dim(lambda, rs)?;
    if dim > d_char {
        return Err(Error::Capacity(format!(
            "dim V{lambda} = {dim} exceeds character bound {d_char}"
        )));
    }
    let dominant = dominant_multiplicities(lambda, rs);
    let mut entries: BTreeMap<Weight, u64> = BTreeMap::new();
    let mut cutoff = 0i64;
    for (mu, m) in &dominant {
        if *m == 0 {
            continue;
        }
        cutoff = cutoff.max(mu.abs_sum().doubled());
        for w in weyl_orbit(mu) {
            entries.insert(w, *m);
        }
    }
    let table = CharacterTable { entries, cutoff };
    debug_assert_eq!(table.total(), dim);
    Ok(table)
}

/// Multiplicities of the dominant weights of `V(lambda)`.
fn dominant_multiplicities(lambda: &Weight, rs: &RootSystemD) -> HashMap<Weight, u64> {
    let n = rs.n;
    let bound = lambda.coord(0).doubled();
    let lam_rho = lambda.add(&rs.rho);
    let norm_top = lam_rho.dot4(&lam_rho) as i128;

    let mut memo: HashMap<Weight, u64> = HashMap::new();
    memo.insert(lambda.clone(), 1);

    // candidate dominant weights: same coordinate residues, difference from
    // lambda in the root lattice (integer vector with even sum), inside the
    // cube |a_i| <= lambda_1
    let mut candidates: Vec<Weight> = Vec::new();
    let parity = lambda.coord(0).doubled().rem_euclid(2);
    let mut stack: Vec<Vec<i64>> = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            let w = Weight::new(prefix.iter().map(|&c| Half(c)).collect()).unwrap();
            let diff = lambda.sub(&w);
            if diff.coord_sum().doubled() % 4 == 0 {
                candidates.push(w);
            }
            continue;
        }
        let hi = if prefix.is_empty() {
            bound
        } else {
            *prefix.last().unwrap()
        };
        let lo = if prefix.len() == n - 1 { -hi } else { 0.max(-bound) };
        let mut c = hi;
        // keep residue class; doubled coordinates step by 2
        if (c - parity).rem_euclid(2) != 0 {
            c -= 1;
        }
        while c >= lo {
            let mut next = prefix.clone();
            next.push(c);
            stack.push(next);
            c -= 2;
        }
    }
    // order by decreasing |mu + rho|^2 so dependencies are ready
    candidates.sort_by_key(|mu| {
        let mr = mu.add(&rs.rho);
        -(mr.dot4(&mr) as i128)
    });

    for mu in candidates {
        if memo.contains_key(&mu) {
            continue;
        }
        let mu_rho = mu.add(&rs.rho);
        let denom = norm_top - mu_rho.dot4(&mu_rho) as i128;
        if denom <= 0 {
            memo.insert(mu, 0);
            continue;
        }
        let mut acc: i128 = 0;
        for alpha in &rs.positive_roots {
            let mut k = 1i64;
            loop {
                let mut nu_coords = Vec::with_capacity(rs.n);
                let mut out_of_cube = false;
                for i in 0..rs.n {
                    let c = mu.coord(i).doubled() + k * alpha.coord(i).doubled();
                    if c.abs() > bound {
                        out_of_cube = true;
                    }
                    nu_coords.push(Half(c));
                }
                if out_of_cube {
                    break;
                }
                let nu = Weight::new(nu_coords).unwrap();
                let rep = nu.dominant_representative();
                let m = memo.get(&rep).copied().unwrap_or(0);
                if m > 0 {
                    acc += (m as i128) * (nu.dot4(alpha) as i128);
                }
                k += 1;
            }
        }
        // acc is in quarter units times 2; denom in quarter units
        let num = 2 * acc;
        assert!(num % denom == 0, "Freudenthal division must be exact");
        let m = num / denom;
        assert!(m >= 0);
        memo.insert(mu, m as u64);
    }
    memo
}

/// Full Weyl orbit (signed permutations, even number of sign changes) of a
/// dominant weight, each element once.
pub fn weyl_orbit(mu: &Weight) -> Vec<Weight> {
    use itertools::Itertools;
    let n = mu.rank();
    let abs: Vec<i64> = mu.coords().iter().map(|c| c.0.abs()).collect();
    let has_zero = abs.contains(&0);
    let base_neg = mu.coords().iter().filter(|c| c.0 < 0).count() % 2;
    let mut out: HashSet<Weight> = HashSet::new();
    for perm in abs.iter().copied().permutations(n).unique() {
        let nonzero: Vec<usize> = (0..n).filter(|&i| perm[i] != 0).collect();
        let z = nonzero.len();
        for mask in 0..(1u32 << z) {
            let negs = mask.count_ones() as usize;
            if !has_zero && negs % 2 != base_neg {
                continue;
            }
            let mut v = perm.clone();
            for (b, &i) in nonzero.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    v[i] = -v[i];
                }
            }
            out.insert(Weight::new(v.into_iter().map(Half).collect()).unwrap());
        }
    }
    let mut v: Vec<Weight> = out.into_iter().collect();
    v.sort();
    v
}

/// Decomposes `V(lambda) (x) V(mu)` into irreducibles by exact character
/// product followed by iterative highest-weight extraction.
///
/// The extraction repeatedly removes the character of the lexicographically
/// maximal dominant weight with nonzero residual multiplicity; character
/// theory makes the resulting multiset independent of any ordering choices.
pub fn tensor_decompose(
    lambda: &Weight,
    mu: &Weight,
    rs: &RootSystemD,
    d_char: u128,
) -> Result<Vec<(Weight, u64)>> {
    let d1 = weyl_dim(lambda, rs)?;
    let d2 = weyl_dim(mu, rs)?;
    if d1.checked_mul(d2).is_none_or(|p| p > d_char) {
        return Err(Error::Capacity(format!(
            "dim product {d1} * {d2} exceeds character bound {d_char}"
        )));
    }
    let ta = freudenthal(lambda, rs, d_char)?;
    let tb = freudenthal(mu, rs, d_char)?;
    let product = ta.product(&tb);
    decompose_character(product, rs, d_char)
}

/// Extracts irreducible constituents from a complete character table.
pub fn decompose_character(
    mut table: CharacterTable,
    rs: &RootSystemD,
    d_char: u128,
) -> Result<Vec<(Weight, u64)>> {
    let mut char_cache: HashMap<Weight, CharacterTable> = HashMap::new();
    let mut out: Vec<(Weight, u64)> = Vec::new();
    loop {
        table.entries.retain(|_, m| *m > 0);
        let Some(top) = table.entries.keys().max().cloned() else {
            break;
        };
        assert!(
            top.is_dominant(),
            "maximal residual weight {top} must be dominant"
        );
        let m = table.entries[&top];
        let ch = match char_cache.get(&top) {
            Some(c) => c.clone(),
            None => {
                let c = freudenthal(&top, rs, d_char)?;
                char_cache.insert(top.clone(), c.clone());
                c
            }
        };
        for (w, cm) in &ch.entries {
            let e = table.entries.get_mut(w).unwrap_or_else(|| {
                panic!("character extraction went negative at {w}");
            });
            assert!(*e >= m * cm, "character extraction went negative at {w}");
            *e -= m * cm;
        }
        out.push((top, m));
    }
    out.sort();
    Ok(out)
}

/// Highest weight of a module for the Levi `gl(1) x gl(m) x so(2)`, in the
/// printed coordinates `(c; b_1, ..., b_m; d)` with `b` weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeviWeight {
    pub gl1: Half,
    pub block: Vec<Half>,
    pub so2: Half,
}

impl LeviWeight {
    pub fn new(gl1: Half, block: Vec<Half>, so2: Half) -> LeviWeight {
        LeviWeight { gl1, block, so2 }
    }
}

impl std::fmt::Display for LeviWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({};", self.gl1)?;
        for (i, b) in self.block.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ";{})", self.so2)
    }
}

/// Decomposes `S^k(n_perp) (x) F_mu` for the Levi `gl(1) x gl(m) x so(2)`.
///
/// With `mu = (-a_1; -a_{n-1}, ..., -a_2; -a_n)` the summands are
/// `(-a_1 + k; -a_{n-1} - k_{n-1}, ..., -a_2 - k_2; -a_n)` over all
/// `k_i >= 0` with `sum k_i = k` and `0 <= k_i <= a_{i-1} - a_i` for
/// `3 <= i <= n-1` (the strip on the last block entry is unconstrained).
/// Every summand occurs with multiplicity one.
pub fn pieri_tensor(mu: &LeviWeight, k: i64) -> Result<Vec<LeviWeight>> {
    if k < 0 {
        return Err(Error::Invalid(format!("negative degree {k}")));
    }
    let m = mu.block.len();
    // alphas[t] = alpha_{t+2}: block is listed as (-alpha_{n-1}, ..., -alpha_2)
    let alphas: Vec<Half> = mu.block.iter().rev().map(|b| -*b).collect();
    // strip bounds: s_t subtracted from alpha_{t+2}; t = 0 (alpha_2) is free,
    // t >= 1 bounded by alpha_{t+1} - alpha_{t+2}
    let mut out = Vec::new();
    let mut strips = vec![0i64; m];
    enumerate_strips(&alphas, k, 0, &mut strips, &mut out, mu);
    let distinct: HashSet<&LeviWeight> = out.iter().collect();
    assert_eq!(distinct.len(), out.len(), "Pieri summands must be distinct");
    Ok(out)
}

fn enumerate_strips(
    alphas: &[Half],
    remaining: i64,
    t: usize,
    strips: &mut Vec<i64>,
    out: &mut Vec<LeviWeight>,
    mu: &LeviWeight,
) {
    let m = alphas.len();
    if t == m {
        if remaining != 0 {
            return;
        }
        let k: i64 = strips.iter().sum();
        let mut block: Vec<Half> = Vec::with_capacity(m);
        // block entry order: (-alpha_{n-1} - k_{n-1}, ..., -alpha_2 - k_2)
        for t in (0..m).rev() {
            block.push(-(alphas[t] + Half::from_int(strips[t])));
        }
        out.push(LeviWeight::new(
            mu.gl1 + Half::from_int(k),
            block,
            mu.so2,
        ));
        return;
    }
    let cap = if t == 0 {
        remaining
    } else {
        let bound = (alphas[t - 1] - alphas[t]).doubled() / 2;
        bound.min(remaining)
    };
    for s in 0..=cap {
        strips[t] = s;
        enumerate_strips(alphas, remaining - s, t + 1, strips, out, mu);
    }
    strips[t] = 0;
}

/// Helgason criterion for `(gl(2k), sp(2k))`: a `gl(2k)` highest weight has
/// `sp(2k)`-fixed vectors iff its coordinates pair up equal,
/// `nu_1 = nu_2, nu_3 = nu_4, ...`.
pub fn helgason_sp_fixed(nu: &[Half]) -> Result<bool> {
    if nu.len() % 2 != 0 {
        return Err(Error::Invalid(format!(
            "sp criterion needs even length, got {}",
            nu.len()
        )));
    }
    Ok(nu.chunks(2).all(|pair| pair[0] == pair[1]))
}

/// Helgason criterion for `so(2m) | so(2m-1)`: a `so(2m)` highest weight
/// restricts with a fixed vector iff every coordinate after the first
/// vanishes (the leading coordinate stays free).
pub fn helgason_so_fixed(nu: &[Half]) -> bool {
    !nu.is_empty() && nu[0] >= Half::ZERO && nu[1..].iter().all(|c| *c == Half::ZERO)
}
