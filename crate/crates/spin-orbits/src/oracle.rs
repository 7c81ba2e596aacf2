//! Brute-force verification oracles: explicit matrix models of integral
//! irreducibles built by iterated tensoring with the standard representation,
//! exact
//! centralizer fixed spaces with component-character splitting, and a
//! character-theoretic branching oracle for the induced modules at small
//! rank.
//!
//! The fixed-space count is the algebraic joint-kernel definition:
//! `fixed_dim = dim { v in V(lambda) : c(e) v = 0 }` with `c(e)` the full
//! centralizer of the orbit representative (Levi plus nilradical). By
//! Frobenius reciprocity this equals the multiplicity of `V(lambda)` in the
//! regular functions on `K / C_K(O)^0`.
//!
//! The matrix oracle covers integral weights only; the genuine (half
//! integral) families are exercised through the branching oracle instead,
//! which needs nothing beyond exact character tables.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num::Zero;
use rayon::prelude::*;

use crate::linalg::{nullspace, rat, Echelon, Rat, SparseVec};
use crate::orbits::{
    chevalley_basis, classify, commutator, orbit_dimension, root_minus, root_plus, sl2_triple,
    so_matrix, CaseId, ChevLabel, OrbitLabel,
};
use crate::rootsys::{freudenthal, tensor_decompose, weyl_dim, CharacterTable, RootSystemD};
use crate::spectra::{characters_of, dominant_weights, regular_section_family, Cutoff, Integrality};
use crate::weight::{Half, Parity, Weight};
use crate::{Capacity, Error, Result};

/// Which chain of dominant weights `build_irrep` climbs from `0` up to
/// `lambda`; each link realizes the next module inside `previous (x) C^{2n}`,
/// so basis vectors always live in small weight spaces instead of a full
/// tensor power. Both orders produce the same abstract module; running an
/// oracle under both is a cheap independence check on the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    /// Layered: each step raises the largest coordinate that keeps the
    /// weight dominant.
    Standard,
    /// Row-first: each step raises the smallest unfinished coordinate.
    Reversed,
}

/// A chain of dominant integral weights from `0` to `lambda` in which
/// consecutive weights differ by `+-eps_i`. The minimal unfinished index is
/// always steppable, so scanning in either order terminates.
fn dominant_chain(lambda: &Weight, embedding: Embedding) -> Vec<Weight> {
    let n = lambda.rank();
    let target: Vec<i64> = lambda.coords().iter().map(|c| c.to_int()).collect();
    let mut cur = vec![0i64; n];
    let mut chain = vec![Weight::integral(&cur)];
    while cur != target {
        let order: Vec<usize> = match embedding {
            Embedding::Standard => (0..n).rev().collect(),
            Embedding::Reversed => (0..n).collect(),
        };
        let next = order
            .iter()
            .find_map(|&i| {
                if cur[i] == target[i] {
                    return None;
                }
                let mut next = cur.clone();
                next[i] += if target[i] > cur[i] { 1 } else { -1 };
                Weight::integral(&next).is_dominant().then_some(next)
            })
            .expect("a dominant step always exists");
        cur = next;
        chain.push(Weight::integral(&cur));
    }
    chain
}

/// One link of the chain: a module with a weight-homogeneous basis of
/// sparse vectors over the coordinate space of the previous link tensored
/// with `C^{2n}` (key = `i * 2n + j`).
struct Level {
    basis: Vec<SparseVec>,
    weights: Vec<Weight>,
    ech: Echelon,
    row_of: HashMap<u64, usize>,
}

impl Level {
    fn new() -> Level {
        Level {
            basis: Vec::new(),
            weights: Vec::new(),
            ech: Echelon::new(),
            row_of: HashMap::new(),
        }
    }

    /// The trivial module spanned by a single coordinate.
    fn trivial(n: usize) -> Level {
        let mut l = Level::new();
        l.insert_with(SparseVec::unit(0), |_| Weight::zero(n));
        l
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn insert_with<F: Fn(u64) -> Weight>(&mut self, v: SparseVec, weight_of: F) -> Option<usize> {
        let nv = self.ech.insert(v)?;
        let pivot = nv.leading().unwrap().0;
        let idx = self.basis.len();
        self.weights.push(weight_of(pivot));
        self.row_of.insert(pivot, idx);
        self.basis.push(nv.clone());
        Some(idx)
    }

    fn express(&self, v: &SparseVec) -> Option<Vec<(usize, Rat)>> {
        let coords = self.ech.express(v)?;
        Some(
            coords
                .into_iter()
                .map(|(pivot, c)| (self.row_of[&pivot], c))
                .collect(),
        )
    }
}

/// Weight of a coordinate `(i, j)` of `prev (x) C^{2n}`.
fn key_weight(key: u64, prev: &Level, n: usize) -> Weight {
    let base = (2 * n) as u64;
    let i = (key / base) as usize;
    let j = (key % base) as usize;
    let mut coords = prev.weights[i].coords().to_vec();
    if j < n {
        coords[j] = coords[j] + Half::from_int(1);
    } else {
        coords[j - n] = coords[j - n] - Half::from_int(1);
    }
    Weight::new(coords).expect("coordinate weight is well formed")
}

/// `m` as a derivation on `prev (x) C^{2n}`, with `prev_cols` the sparse
/// columns of `m` on the previous module.
fn apply_step(
    prev_cols: &[Vec<(usize, Rat)>],
    m: &[Vec<Rat>],
    v: &SparseVec,
    n: usize,
) -> SparseVec {
    let base = (2 * n) as u64;
    let mut out = SparseVec::new();
    for (&key, c) in &v.entries {
        let i = (key / base) as usize;
        let j = (key % base) as usize;
        for (r, a) in &prev_cols[i] {
            out.add_term((*r as u64) * base + j as u64, &(c * a));
        }
        for (r, row) in m.iter().enumerate() {
            if !row[j].is_zero() {
                out.add_term((i as u64) * base + r as u64, &(c * &row[j]));
            }
        }
    }
    out
}

/// A diagonal group element acting multiplicatively on `prev (x) C^{2n}`.
fn group_apply_step(
    prev_cols: &[Vec<(usize, Rat)>],
    signs: &[i64],
    v: &SparseVec,
    n: usize,
) -> SparseVec {
    let base = (2 * n) as u64;
    let mut out = SparseVec::new();
    for (&key, c) in &v.entries {
        let i = (key / base) as usize;
        let j = (key % base) as usize;
        let s = rat(signs[j]);
        for (r, a) in &prev_cols[i] {
            out.add_term((*r as u64) * base + j as u64, &(c * a * &s));
        }
    }
    out
}

/// An integral irreducible `V(lambda)` realized through a chain of
/// submodules `V(mu_k) <= V(mu_{k-1}) (x) C^{2n}` along a dominant chain
/// from `0` to `lambda`. Basis vectors are weight homogeneous and sparse
/// over the previous link's coordinates, so the footprint stays small even
/// for models of dimension in the thousands.
pub struct MatrixRep {
    pub n: usize,
    pub highest_weight: Weight,
    levels: Vec<Level>,
}

impl MatrixRep {
    fn top(&self) -> &Level {
        self.levels.last().unwrap()
    }

    pub fn dim(&self) -> usize {
        self.top().dim()
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.top().weights[i]
    }

    pub fn basis_vector(&self, i: usize) -> &SparseVec {
        &self.top().basis[i]
    }

    /// Sparse columns of `m` acting on `levels[upto]`, propagated up the
    /// chain; at the last level only `wanted` columns when given.
    fn level_columns(
        &self,
        m: &[Vec<Rat>],
        upto: usize,
        wanted: Option<&[usize]>,
    ) -> Vec<Vec<(usize, Rat)>> {
        let mut prev: Vec<Vec<(usize, Rat)>> = vec![Vec::new()];
        for k in 1..=upto {
            let level = &self.levels[k];
            let js: Vec<usize> = match (k == upto, wanted) {
                (true, Some(w)) => w.to_vec(),
                _ => (0..level.dim()).collect(),
            };
            let mut cols = vec![Vec::new(); level.dim()];
            for j in js {
                let img = apply_step(&prev, m, &level.basis[j], self.n);
                cols[j] = level
                    .express(&img)
                    .expect("so(2n) must preserve the model subspace");
            }
            prev = cols;
        }
        prev
    }

    /// Columns of `m` on the model basis, restricted to `wanted` when given.
    pub fn columns_of(&self, m: &[Vec<Rat>], wanted: Option<&[usize]>) -> Vec<Vec<(usize, Rat)>> {
        self.level_columns(m, self.levels.len() - 1, wanted)
    }

    /// Columns of a diagonal sign matrix acting as a group element.
    fn group_columns(&self, signs: &[i64], wanted: Option<&[usize]>) -> Vec<Vec<(usize, Rat)>> {
        let upto = self.levels.len() - 1;
        let mut prev: Vec<Vec<(usize, Rat)>> = vec![vec![(0, rat(1))]];
        for k in 1..=upto {
            let level = &self.levels[k];
            let js: Vec<usize> = match (k == upto, wanted) {
                (true, Some(w)) => w.to_vec(),
                _ => (0..level.dim()).collect(),
            };
            let mut cols = vec![Vec::new(); level.dim()];
            for j in js {
                let img = group_apply_step(&prev, signs, &level.basis[j], self.n);
                cols[j] = level
                    .express(&img)
                    .expect("sigma must preserve the model subspace");
            }
            prev = cols;
        }
        prev
    }

    /// Applies a `2n x 2n` matrix to a vector over the top coordinate
    /// space, acting as a derivation of the tensor chain.
    pub fn apply(&self, m: &[Vec<Rat>], v: &SparseVec) -> SparseVec {
        let l = self.levels.len();
        if l == 1 {
            return SparseVec::new();
        }
        let prev = self.level_columns(m, l - 2, None);
        apply_step(&prev, m, v, self.n)
    }

    /// Coordinates of a top-space vector in the model basis; `None` if it
    /// is not in the model subspace.
    pub fn express(&self, v: &SparseVec) -> Option<Vec<(usize, Rat)>> {
        self.top().express(v)
    }

    /// Dense matrix of an ambient operator restricted to the model.
    pub fn matrix_of(&self, m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let d = self.dim();
        let cols = self.columns_of(m, None);
        let mut out = vec![vec![Rat::zero(); d]; d];
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col {
                out[*i][j] = c.clone();
            }
        }
        out
    }

    /// Matrix of a Chevalley generator.
    pub fn chev_matrix(&self, label: &ChevLabel) -> Vec<Vec<Rat>> {
        self.matrix_of(&rat_matrix(&so_matrix(label, self.n)))
    }
}

/// Integer matrix to rational.
pub fn rat_matrix(m: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    m.iter()
        .map(|row| row.iter().map(|&x| rat(x)).collect())
        .collect()
}

fn simple_raising_matrices(n: usize) -> Vec<Vec<Vec<Rat>>> {
    let mut labels: Vec<ChevLabel> = (0..n - 1)
        .map(|i| ChevLabel::X(root_minus(i, i + 1, n)))
        .collect();
    labels.push(ChevLabel::X(root_plus(n - 2, n - 1, 1, n)));
    labels
        .iter()
        .map(|l| rat_matrix(&so_matrix(l, n)))
        .collect()
}

fn simple_lowering_matrices(n: usize) -> Vec<Vec<Vec<Rat>>> {
    let mut labels: Vec<ChevLabel> = (0..n - 1)
        .map(|i| ChevLabel::X(root_minus(i + 1, i, n)))
        .collect();
    labels.push(ChevLabel::X(root_plus(n - 2, n - 1, -1, n)));
    labels
        .iter()
        .map(|l| rat_matrix(&so_matrix(l, n)))
        .collect()
}

/// Builds the explicit model of `V(lambda)`: walks a dominant chain from
/// `0` to `lambda`, at each link solving for a highest weight vector of
/// the next weight inside `previous (x) C^{2n}` and closing it under the
/// simple lowering operators.
pub fn build_irrep(
    lambda: &Weight,
    n: usize,
    embedding: Embedding,
    d_mat: u64,
) -> Result<MatrixRep> {
    if lambda.rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: lambda.rank(),
        });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if lambda.parity() != Parity::Integral {
        return Err(Error::Invalid(format!(
            "matrix oracle covers integral weights only, got {lambda}"
        )));
    }
    let rs = RootSystemD::new(n)?;
    let dim = weyl_dim(lambda, &rs)?;
    if dim > d_mat as u128 {
        return Err(Error::Capacity(format!(
            "dim V{lambda} = {dim} exceeds matrix bound {d_mat}"
        )));
    }
    let chain = dominant_chain(lambda, embedding);
    let raise_std = simple_raising_matrices(n);
    let lower_std = simple_lowering_matrices(n);
    let base = (2 * n) as u64;

    let mut levels = vec![Level::trivial(n)];
    // generator columns on the current top link
    let mut raise_cols: Vec<Vec<Vec<(usize, Rat)>>> = vec![vec![Vec::new()]; n];
    let mut lower_cols: Vec<Vec<Vec<(usize, Rat)>>> = vec![vec![Vec::new()]; n];

    for nu in chain.iter().skip(1) {
        let prev = levels.last().unwrap();
        // the nu weight space of prev (x) C^{2n}
        let cand: Vec<u64> = (0..prev.dim() as u64)
            .flat_map(|i| (0..base).map(move |j| i * base + j))
            .filter(|&key| key_weight(key, prev, n) == *nu)
            .collect();
        // annihilation by the simple raisings picks out a highest weight
        // vector; any kernel vector generates an irreducible copy of V(nu)
        let mut rows: BTreeMap<(usize, u64), Vec<Rat>> = BTreeMap::new();
        for (g, m) in raise_std.iter().enumerate() {
            for (cj, &key) in cand.iter().enumerate() {
                let i = (key / base) as usize;
                let j = (key % base) as usize;
                for (r, a) in &raise_cols[g][i] {
                    rows.entry((g, (*r as u64) * base + j as u64))
                        .or_insert_with(|| vec![Rat::zero(); cand.len()])[cj] += a;
                }
                for (r, row) in m.iter().enumerate() {
                    if !row[j].is_zero() {
                        rows.entry((g, (i as u64) * base + r as u64))
                            .or_insert_with(|| vec![Rat::zero(); cand.len()])[cj] += &row[j];
                    }
                }
            }
        }
        let rows_vec: Vec<Vec<Rat>> = rows.into_values().collect();
        let kernel = nullspace(&rows_vec, cand.len());
        let hw_coeffs = kernel
            .first()
            .expect("a highest weight vector exists at every chain step");
        let mut hw = SparseVec::new();
        for (cj, c) in hw_coeffs.iter().enumerate() {
            hw.add_term(cand[cj], c);
        }

        let mut level = Level::new();
        level.insert_with(hw, |key| key_weight(key, prev, n));
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(j) = queue.pop_front() {
            for (g, m) in lower_std.iter().enumerate() {
                let img = apply_step(&lower_cols[g], m, &level.basis[j], n);
                if let Some(idx) = level.insert_with(img, |key| key_weight(key, prev, n)) {
                    queue.push_back(idx);
                }
            }
        }
        assert_eq!(
            level.dim() as u128,
            weyl_dim(nu, &rs)?,
            "model dimension must equal the Weyl dimension for {nu}"
        );

        let lift = |std_m: &[Vec<Rat>], prev_cols: &Vec<Vec<(usize, Rat)>>| {
            (0..level.dim())
                .map(|j| {
                    let img = apply_step(prev_cols, std_m, &level.basis[j], n);
                    level
                        .express(&img)
                        .expect("so(2n) must preserve the model subspace")
                })
                .collect::<Vec<_>>()
        };
        raise_cols = raise_std
            .iter()
            .zip(&raise_cols)
            .map(|(m, pc)| lift(m, pc))
            .collect();
        lower_cols = lower_std
            .iter()
            .zip(&lower_cols)
            .map(|(m, pc)| lift(m, pc))
            .collect();
        levels.push(level);
    }
    assert_eq!(
        levels.last().unwrap().dim() as u128,
        dim,
        "model dimension must equal the Weyl dimension for {lambda}"
    );
    Ok(MatrixRep {
        n,
        highest_weight: lambda.clone(),
        levels,
    })
}

/// Basis of the full centralizer `c(e) = { x in so(2n) : [x, e] = 0 }`,
/// expressed in coordinates over `chevalley_basis(n)`.
pub struct CentralizerBasis {
    pub n: usize,
    pub labels: Vec<ChevLabel>,
    pub coords: Vec<Vec<Rat>>,
}

impl CentralizerBasis {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Dense `2n x 2n` matrix of the `i`-th basis element.
    pub fn matrix(&self, i: usize) -> Vec<Vec<Rat>> {
        let d = 2 * self.n;
        let mut out = vec![vec![Rat::zero(); d]; d];
        for (c, label) in self.coords[i].iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let m = so_matrix(label, self.n);
            for (r, row) in m.iter().enumerate() {
                for (s, &x) in row.iter().enumerate() {
                    if x != 0 {
                        out[r][s] += c * rat(x);
                    }
                }
            }
        }
        out
    }
}

/// Solves `[x, e] = 0` over the Chevalley basis by exact elimination.
pub fn centralizer_basis(e: &[Vec<i64>], n: usize) -> CentralizerBasis {
    let labels = chevalley_basis(n);
    let comms: Vec<Vec<Vec<i64>>> = labels
        .iter()
        .map(|b| commutator(&so_matrix(b, n), e))
        .collect();
    let mut rows = Vec::with_capacity(4 * n * n);
    for i in 0..2 * n {
        for j in 0..2 * n {
            rows.push(comms.iter().map(|c| rat(c[i][j])).collect::<Vec<Rat>>());
        }
    }
    let coords = nullspace(&rows, labels.len());
    CentralizerBasis { n, labels, coords }
}

/// Result of the fixed-space computation for one `(orbit, lambda)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub orbit: OrbitLabel,
    pub weight: Weight,
    pub fixed_dim: usize,
    /// Dimension per component-group character on the fixed space.
    pub character_split: BTreeMap<String, usize>,
}

/// Diagonal `SO(2n)` representative of the nontrivial component of the
/// centralizer, for the cases where `A_{SO}(O) = Z/2` (Cases 1 and 2): it
/// acts by `-1` on the four standard coordinates carried by the `[3]` and
/// distinguished `[1]` Jordan blocks of the representative `e`, i.e. on
/// `span{u_1, u_{-1}, u_{2k+2}, u_{-(2k+2)}}`. Different choices of the
/// `[1]`-line differ by an element of the connected centralizer.
fn sigma_signs(orbit: &OrbitLabel, n: usize) -> Option<Vec<i64>> {
    let case = classify(orbit, n).into_iter().next()?;
    let k = match case {
        CaseId::Case1 => (n - 2) / 2,
        CaseId::Case2 { k } => k,
        _ => return None,
    };
    let mut s = vec![1i64; 2 * n];
    s[0] = -1;
    s[2 * k + 1] = -1;
    s[n] = -1;
    s[n + 2 * k + 1] = -1;
    Some(s)
}

fn sigma_eigenvalue(x: &BTreeMap<usize, Rat>, sigma_cols: &[Vec<(usize, Rat)>]) -> i64 {
    let mut image: BTreeMap<usize, Rat> = BTreeMap::new();
    for (&j, c) in x {
        for (r, a) in &sigma_cols[j] {
            *image.entry(*r).or_insert_with(Rat::zero) += c * a;
        }
    }
    image.retain(|_, v| !v.is_zero());
    if image == *x {
        return 1;
    }
    let neg: BTreeMap<usize, Rat> = x.iter().map(|(k, v)| (*k, -v)).collect();
    assert!(
        image == neg,
        "fixed vector must be a sigma eigenvector (sigma normalizes c(e))"
    );
    -1
}

/// Fixed-space dimension and character split, default embedding.
pub fn invariant_dimension(
    orbit: &OrbitLabel,
    n: usize,
    lambda: &Weight,
    caps: &Capacity,
) -> Result<InvariantReport> {
    invariant_dimension_with(orbit, n, lambda, caps, Embedding::Standard)
}

/// Same, with an explicit choice of tensor-power embedding.
pub fn invariant_dimension_with(
    orbit: &OrbitLabel,
    n: usize,
    lambda: &Weight,
    caps: &Capacity,
    embedding: Embedding,
) -> Result<InvariantReport> {
    let triple = sl2_triple(orbit, n)?;
    let rep = build_irrep(lambda, n, embedding, caps.d_mat)?;
    let e_mat = triple.e_matrix(n);
    let cz = centralizer_basis(&e_mat, n);
    assert_eq!(
        cz.dim() as u64,
        (n * (2 * n - 1)) as u64 - orbit_dimension(orbit, n),
        "centralizer dimension must complement the orbit dimension"
    );

    // Diagonal part of c(e): H(c) with <alpha, c> = 0 for every root in e.
    // A joint-kernel vector is killed by these, so it lives in the span of
    // basis vectors whose weights pair to zero against all of them.
    let t_rows: Vec<Vec<Rat>> = triple
        .e
        .iter()
        .map(|t| match t {
            ChevLabel::X(w) => w.coords().iter().map(|c| rat(c.to_int())).collect(),
            ChevLabel::H(_) => unreachable!("e is a sum of root vectors"),
        })
        .collect();
    let torus = nullspace(&t_rows, n);
    let cols: Vec<usize> = (0..rep.dim())
        .filter(|&j| {
            torus.iter().all(|c| {
                rep.weight(j)
                    .coords()
                    .iter()
                    .zip(c)
                    .map(|(a, x)| rat(a.doubled()) * x)
                    .sum::<Rat>()
                    .is_zero()
            })
        })
        .collect();

    let mut rows: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
    for zi in 0..cz.dim() {
        let m = cz.matrix(zi);
        let mcols = rep.columns_of(&m, Some(&cols));
        for (cj, &j) in cols.iter().enumerate() {
            for (row, c) in &mcols[j] {
                rows.entry((zi, *row))
                    .or_insert_with(|| vec![Rat::zero(); cols.len()])[cj] += c;
            }
        }
    }
    let rows_vec: Vec<Vec<Rat>> = rows.into_values().collect();
    let kernel = nullspace(&rows_vec, cols.len());
    let fixed_dim = kernel.len();

    let mut character_split: BTreeMap<String, usize> = BTreeMap::new();
    if fixed_dim > 0 {
        match sigma_signs(orbit, n) {
            None => {
                // A_{SO}(O) is trivial; every integral fixed vector carries
                // the trivial character.
                character_split.insert("Triv".to_string(), fixed_dim);
            }
            Some(signs) => {
                let sigma_cols = rep.group_columns(&signs, Some(&cols));
                for kvec in &kernel {
                    let mut x: BTreeMap<usize, Rat> = BTreeMap::new();
                    for (cj, c) in kvec.iter().enumerate() {
                        if !c.is_zero() {
                            x.insert(cols[cj], c.clone());
                        }
                    }
                    let name = if sigma_eigenvalue(&x, &sigma_cols) == 1 {
                        "psi1"
                    } else {
                        "psi2"
                    };
                    *character_split.entry(name.to_string()).or_insert(0) += 1;
                }
            }
        }
    }
    Ok(InvariantReport {
        orbit: orbit.clone(),
        weight: lambda.clone(),
        fixed_dim,
        character_split,
    })
}

/// Comparison of the matrix oracle against the closed-form families over
/// all integral dominant weights within a cutoff.
#[derive(Debug, Clone)]
pub struct CrossValidationReport {
    pub orbit: OrbitLabel,
    pub n: usize,
    pub cutoff: i64,
    pub checked: usize,
    /// Weights with a (necessarily one-dimensional) fixed space.
    pub fixed_weights: Vec<Weight>,
    pub discrepancies: Vec<String>,
}

impl CrossValidationReport {
    pub fn ok(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Runs `invariant_dimension` for every integral dominant weight with
/// `sum |a_i| <= cutoff` and model dimension within capacity, and checks
/// the result against the closed-form `R(O, psi)` families.
pub fn cross_validate(
    orbit: &OrbitLabel,
    n: usize,
    cutoff: i64,
    caps: &Capacity,
) -> Result<CrossValidationReport> {
    let rs = RootSystemD::new(n)?;
    let lambdas: Vec<Weight> =
        dominant_weights(n, Integrality::Integral, Cutoff::SumAbs(cutoff))
            .into_iter()
            .filter(|l| matches!(weyl_dim(l, &rs), Ok(d) if d <= caps.d_mat as u128))
            .collect();
    let mut families = Vec::new();
    for cl in characters_of(orbit, n)? {
        let fam = regular_section_family(orbit, n, cl.psi)?;
        if fam.integrality == Integrality::Integral {
            families.push((cl.psi.to_string(), fam));
        }
    }
    let results: Vec<(Weight, InvariantReport)> = lambdas
        .par_iter()
        .map(|l| invariant_dimension(orbit, n, l, caps).map(|r| (l.clone(), r)))
        .collect::<Result<Vec<_>>>()?;

    let mut fixed_weights = Vec::new();
    let mut discrepancies = Vec::new();
    for (lambda, report) in &results {
        let expected: Option<&str> = families
            .iter()
            .find(|(_, fam)| fam.contains(lambda))
            .map(|(name, _)| name.as_str());
        if report.fixed_dim > 1 {
            discrepancies.push(format!(
                "{lambda}: fixed_dim {} violates multiplicity one",
                report.fixed_dim
            ));
        }
        match (expected, report.fixed_dim) {
            (Some(name), 1) => {
                fixed_weights.push(lambda.clone());
                if report.character_split.get(name).copied() != Some(1) {
                    discrepancies.push(format!(
                        "{lambda}: expected character {name}, got split {:?}",
                        report.character_split
                    ));
                }
            }
            (Some(name), d) => discrepancies.push(format!(
                "{lambda}: in family {name} but fixed_dim = {d}"
            )),
            (None, 0) => {}
            (None, d) => discrepancies.push(format!(
                "{lambda}: not in any integral family but fixed_dim = {d}"
            )),
        }
    }
    Ok(CrossValidationReport {
        orbit: orbit.clone(),
        n,
        cutoff,
        checked: results.len(),
        fixed_weights,
        discrepancies,
    })
}

/// The four `U = Spin(2p) x Spin(2p)` types carried by the induced modules
/// of the Case 1 analysis, in the paper's order: tensor squares of the half
/// spin representations on the first factor ((i), (ii)) and single half spin
/// representations on both factors ((iii), (iv)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaType {
    I,
    II,
    III,
    IV,
}

impl std::fmt::Display for SigmaType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SigmaType::I => "(i)",
            SigmaType::II => "(ii)",
            SigmaType::III => "(iii)",
            SigmaType::IV => "(iv)",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for SigmaType {
    type Err = Error;

    fn from_str(s: &str) -> Result<SigmaType> {
        match s.trim_matches(|c| c == '(' || c == ')') {
            "i" | "1" => Ok(SigmaType::I),
            "ii" | "2" => Ok(SigmaType::II),
            "iii" | "3" => Ok(SigmaType::III),
            "iv" | "4" => Ok(SigmaType::IV),
            other => Err(Error::Invalid(format!("unknown sigma type {other:?}"))),
        }
    }
}

/// Multiplicities of one `U`-type in the restrictions `V(lambda)|_U`.
#[derive(Debug, Clone)]
pub struct BranchingReport {
    pub p: usize,
    pub sigma: SigmaType,
    pub cutoff: i64,
    /// One entry per dominant weight of `D_{2p}` (both integralities) with
    /// `sum |a_i| <= cutoff`.
    pub entries: Vec<(Weight, u64)>,
}

impl BranchingReport {
    pub fn multiplicity(&self, lambda: &Weight) -> Option<u64> {
        self.entries
            .iter()
            .find(|(w, _)| w == lambda)
            .map(|(_, m)| *m)
    }
}

/// Irreducible constituents of the sigma type as pairs of `D_p` highest
/// weights with multiplicities. The tensor squares are decomposed by the
/// character oracle rather than by the closed-form lemma, so the odd-`p`
/// swap in the printed formulas cannot leak in here.
pub fn sigma_constituents(
    p: usize,
    sigma: SigmaType,
    rs_p: &RootSystemD,
    d_char: u128,
) -> Result<Vec<((Weight, Weight), u64)>> {
    let plus = Weight::half_integral(&vec![1; p]);
    let minus = {
        let mut v = vec![1i64; p];
        v[p - 1] = -1;
        Weight::half_integral(&v)
    };
    let zero = Weight::zero(p);
    Ok(match sigma {
        SigmaType::I => tensor_decompose(&plus, &plus, rs_p, d_char)?
            .into_iter()
            .map(|(w, m)| ((w, zero.clone()), m))
            .collect(),
        SigmaType::II => tensor_decompose(&minus, &plus, rs_p, d_char)?
            .into_iter()
            .map(|(w, m)| ((w, zero.clone()), m))
            .collect(),
        SigmaType::III => vec![((plus.clone(), plus), 1)],
        SigmaType::IV => vec![((plus, minus), 1)],
    })
}

/// Full decomposition of `V(lambda)` restricted to the coordinate-split
/// `D_p x D_p` inside `D_{2p}`, by exact character restriction and iterated
/// extraction of the maximal residual highest weight pair.
fn restrict_decompose(
    lambda: &Weight,
    p: usize,
    rs_big: &RootSystemD,
    rs_p: &RootSystemD,
    d_char: u128,
) -> Result<BTreeMap<(Weight, Weight), u64>> {
    let table = freudenthal(lambda, rs_big, d_char)?;
    let mut joint: BTreeMap<(Weight, Weight), i128> = BTreeMap::new();
    for (w, m) in &table.entries {
        let w1 = Weight::new(w.coords()[..p].to_vec())?;
        let w2 = Weight::new(w.coords()[p..].to_vec())?;
        *joint.entry((w1, w2)).or_insert(0) += *m as i128;
    }
    let mut cache: HashMap<Weight, CharacterTable> = HashMap::new();
    let char_of = |w: &Weight, cache: &mut HashMap<Weight, CharacterTable>| -> Result<CharacterTable> {
        if let Some(c) = cache.get(w) {
            return Ok(c.clone());
        }
        let c = freudenthal(w, rs_p, d_char)?;
        cache.insert(w.clone(), c.clone());
        Ok(c)
    };
    let mut out = BTreeMap::new();
    loop {
        joint.retain(|k, m| {
            assert!(*m >= 0, "restriction went negative at {:?}", k);
            *m > 0
        });
        let Some(((mu, nu), &m)) = joint.iter().next_back() else {
            break;
        };
        let (mu, nu, m) = (mu.clone(), nu.clone(), m as u64);
        assert!(mu.is_dominant() && nu.is_dominant());
        let ch1 = char_of(&mu, &mut cache)?;
        let ch2 = char_of(&nu, &mut cache)?;
        for (w1, m1) in &ch1.entries {
            for (w2, m2) in &ch2.entries {
                *joint.entry((w1.clone(), w2.clone())).or_insert(0) -=
                    (m * m1 * m2) as i128;
            }
        }
        out.insert((mu, nu), m);
    }
    Ok(out)
}

/// For each dominant weight of `D_{2p}` within the cutoff, the multiplicity
/// of the sigma type in `V(lambda)` restricted to `Spin(2p) x Spin(2p)`. By
/// Frobenius reciprocity this is the multiplicity of `V(lambda)` in the
/// corresponding induced module.
pub fn branching_induction_oracle(
    p: usize,
    sigma: SigmaType,
    cutoff: i64,
    d_char: u128,
) -> Result<BranchingReport> {
    if !(1..=2).contains(&p) {
        return Err(Error::Invalid(format!(
            "branching oracle supports p in {{1, 2}}, got {p}"
        )));
    }
    let rs_big = RootSystemD::new(2 * p)?;
    let mut lambdas = dominant_weights(2 * p, Integrality::Integral, Cutoff::SumAbs(cutoff));
    lambdas.extend(dominant_weights(
        2 * p,
        Integrality::HalfIntegral,
        Cutoff::SumAbs(cutoff),
    ));
    lambdas.sort();
    let needed = match sigma {
        SigmaType::I | SigmaType::II => Parity::Integral,
        SigmaType::III | SigmaType::IV => Parity::HalfIntegral,
    };

    let entries: Vec<(Weight, u64)> = if p == 1 {
        // so(2) x so(2): restriction multiplicities are plain weight
        // multiplicities; the half-spin "representations" are the weights
        // +-1/2 and the tensor squares collapse to single weights.
        let pairs: Vec<(Half, Half)> = match sigma {
            SigmaType::I => vec![(Half::from_int(1), Half::from_int(0))],
            SigmaType::II => vec![(Half::from_int(0), Half::from_int(0))],
            SigmaType::III => vec![(Half::from_halves(1), Half::from_halves(1))],
            SigmaType::IV => vec![(Half::from_halves(1), Half::from_halves(-1))],
        };
        lambdas
            .iter()
            .map(|l| {
                if l.parity() != needed {
                    return Ok((l.clone(), 0));
                }
                let table = freudenthal(l, &rs_big, d_char)?;
                let mult = pairs
                    .iter()
                    .map(|&(x, y)| table.mult(&Weight::new(vec![x, y]).unwrap()))
                    .sum();
                Ok((l.clone(), mult))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let rs_p = RootSystemD::new(p)?;
        let constituents = sigma_constituents(p, sigma, &rs_p, d_char)?;
        lambdas
            .par_iter()
            .map(|l| {
                if l.parity() != needed {
                    return Ok((l.clone(), 0));
                }
                let dec = restrict_decompose(l, p, &rs_big, &rs_p, d_char)?;
                let mult = constituents
                    .iter()
                    .map(|(pair, m)| m * dec.get(pair).copied().unwrap_or(0))
                    .sum();
                Ok((l.clone(), mult))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(BranchingReport {
        p,
        sigma,
        cutoff,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn caps() -> Capacity {
        Capacity::default()
    }

    fn orbit(s: &str) -> OrbitLabel {
        OrbitLabel::from_str(s).unwrap()
    }

    fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let d = a.len();
        let mut out = vec![vec![Rat::zero(); d]; d];
        for i in 0..d {
            for k in 0..d {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..d {
                    let t = &a[i][k] * &b[k][j];
                    out[i][j] += t;
                }
            }
        }
        out
    }

    #[test]
    fn build_irrep_dimensions() {
        let n = 4;
        let cases = [
            (Weight::integral(&[1, 0, 0, 0]), 8usize),
            (Weight::integral(&[1, 1, 0, 0]), 28),
            (Weight::integral(&[2, 0, 0, 0]), 35),
            (Weight::integral(&[1, 1, 1, -1]), 35),
        ];
        for (lambda, dim) in cases {
            let rep = build_irrep(&lambda, n, Embedding::Standard, 4000).unwrap();
            assert_eq!(rep.dim(), dim, "dim V{lambda}");
        }
    }

    #[test]
    fn half_integral_weight_rejected() {
        let lambda = Weight::half_integral(&[1, 1, 1, 1]);
        assert!(build_irrep(&lambda, 4, Embedding::Standard, 4000).is_err());
    }

    #[test]
    fn generator_commutation_relations() {
        // [H(eps_i), X(alpha)] = <alpha, eps_i> X(alpha) on the model.
        let n = 3;
        let lambda = Weight::integral(&[1, 1, 0]);
        let rep = build_irrep(&lambda, n, Embedding::Standard, 4000).unwrap();
        for i in 0..n {
            let h = rep.chev_matrix(&ChevLabel::H(i));
            for label in chevalley_basis(n) {
                let ChevLabel::X(alpha) = &label else { continue };
                let x = rep.chev_matrix(&label);
                let lhs = mat_mul(&h, &x);
                let rhs = mat_mul(&x, &h);
                let pairing = rat(alpha.coord(i).to_int());
                for r in 0..rep.dim() {
                    for c in 0..rep.dim() {
                        let comm = &lhs[r][c] - &rhs[r][c];
                        assert_eq!(comm, &pairing * &x[r][c], "[H({i}), X{alpha}]");
                    }
                }
            }
        }
    }

    #[test]
    fn highest_weight_vector_is_annihilated() {
        let n = 4;
        let lambda = Weight::integral(&[2, 1, 1, -1]);
        let rep = build_irrep(&lambda, n, Embedding::Standard, 4000).unwrap();
        // raising operators: positive root vectors
        let rs = RootSystemD::new(n).unwrap();
        let hw = rep.basis_vector(0).clone();
        for alpha in &rs.positive_roots {
            let m = rat_matrix(&so_matrix(&ChevLabel::X(alpha.clone()), n));
            assert!(rep.apply(&m, &hw).is_zero(), "X{alpha} must kill the hw vector");
        }
        // torus weight
        for i in 0..n {
            let m = rat_matrix(&so_matrix(&ChevLabel::H(i), n));
            let img = rep.apply(&m, &hw);
            let mut expect = hw.clone();
            expect.scale(&rat(lambda.coord(i).to_int()));
            assert_eq!(img, expect);
        }
    }

    #[test]
    fn centralizer_dimensions() {
        let n = 4;
        let cases = [
            ("3,2,2,1", 12usize),
            ("2,2,1,1,1,1", 18),
            ("1,1,1,1,1,1,1,1", 28),
        ];
        for (label, dim) in cases {
            let o = orbit(label);
            let e = sl2_triple(&o, n).unwrap().e_matrix(n);
            let cz = centralizer_basis(&e, n);
            assert_eq!(cz.dim(), dim, "dim c(e) for {o}");
        }
    }

    #[test]
    fn centralizer_is_bracket_closed() {
        let n = 4;
        let o = orbit("3,2,2,1");
        let e = sl2_triple(&o, n).unwrap().e_matrix(n);
        let cz = centralizer_basis(&e, n);
        let mats: Vec<Vec<Vec<Rat>>> = (0..cz.dim()).map(|i| cz.matrix(i)).collect();
        let flatten = |m: &[Vec<Rat>]| {
            let mut v = SparseVec::new();
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    v.add_term((i * 2 * n + j) as u64, x);
                }
            }
            v
        };
        let mut span = Echelon::new();
        for m in &mats {
            span.insert(flatten(m));
        }
        for a in &mats {
            for b in &mats {
                let mut br = mat_mul(a, b);
                let ba = mat_mul(b, a);
                for i in 0..2 * n {
                    for j in 0..2 * n {
                        br[i][j] -= &ba[i][j];
                    }
                }
                assert!(span.contains(&flatten(&br)), "bracket must stay in c(e)");
            }
        }
    }

    #[test]
    fn sigma_commutes_with_triple() {
        let n = 4;
        for label in ["3,2,2,1", "3,1,1,1,1,1"] {
            let o = orbit(label);
            let signs = sigma_signs(&o, n).unwrap();
            let triple = sl2_triple(&o, n).unwrap();
            for m in [triple.e_matrix(n), triple.h_matrix(n)] {
                for i in 0..2 * n {
                    for j in 0..2 * n {
                        assert_eq!(signs[i] * m[i][j] * signs[j], m[i][j]);
                    }
                }
            }
            assert_eq!(signs.iter().product::<i64>(), 1, "sigma must be in SO");
        }
    }

    #[test]
    fn invariant_examples_case1() {
        let o = orbit("3,2,2,1");
        let r0 = invariant_dimension(&o, 4, &Weight::zero(4), &caps()).unwrap();
        assert_eq!(r0.fixed_dim, 1);
        assert_eq!(r0.character_split.get("psi1"), Some(&1));
        let r1 =
            invariant_dimension(&o, 4, &Weight::integral(&[1, 0, 0, 0]), &caps()).unwrap();
        assert_eq!(r1.fixed_dim, 1);
        assert_eq!(r1.character_split.get("psi2"), Some(&1));
    }

    #[test]
    fn invariant_examples_cases_3_and_4() {
        let o3 = orbit("2,2,2,2:I");
        let miss =
            invariant_dimension(&o3, 4, &Weight::integral(&[1, 0, 0, 0]), &caps()).unwrap();
        assert_eq!(miss.fixed_dim, 0);
        let hit =
            invariant_dimension(&o3, 4, &Weight::integral(&[1, 1, 0, 0]), &caps()).unwrap();
        assert_eq!(hit.fixed_dim, 1);
        assert_eq!(hit.character_split.get("Triv"), Some(&1));

        let o4 = orbit("2,2,1,1,1,1");
        let hit4 =
            invariant_dimension(&o4, 4, &Weight::integral(&[1, 1, 0, 0]), &caps()).unwrap();
        assert_eq!(hit4.fixed_dim, 1);
        let miss4 =
            invariant_dimension(&o4, 4, &Weight::integral(&[1, 0, 0, 0]), &caps()).unwrap();
        assert_eq!(miss4.fixed_dim, 0);
    }

    #[test]
    fn embedding_independence() {
        let o = orbit("3,2,2,1");
        for coords in [[1, 1, 0, 0], [2, 1, 1, 0], [1, 1, 1, -1]] {
            let lambda = Weight::integral(&coords);
            let a = invariant_dimension_with(&o, 4, &lambda, &caps(), Embedding::Standard)
                .unwrap();
            let b = invariant_dimension_with(&o, 4, &lambda, &caps(), Embedding::Reversed)
                .unwrap();
            assert_eq!(a.fixed_dim, b.fixed_dim);
            assert_eq!(a.character_split, b.character_split);
        }
    }

    #[test]
    fn cross_validation_small_cutoff() {
        for label in ["3,2,2,1", "2,2,1,1,1,1", "2,2,2,2:I"] {
            let o = orbit(label);
            let report = cross_validate(&o, 4, 2, &caps()).unwrap();
            assert!(report.checked >= 4);
            assert!(report.ok(), "discrepancies for {o}: {:?}", report.discrepancies);
        }
    }

    #[test]
    fn zero_orbit_fixes_only_trivial() {
        let o = orbit("1,1,1,1,1,1,1,1");
        let report = cross_validate(&o, 4, 2, &caps()).unwrap();
        assert!(report.ok(), "{:?}", report.discrepancies);
        assert_eq!(report.fixed_weights, vec![Weight::zero(4)]);
    }

    #[test]
    fn branching_examples_p2() {
        let d = caps().d_char;
        let i = branching_induction_oracle(2, SigmaType::I, 2, d).unwrap();
        assert_eq!(i.multiplicity(&Weight::zero(4)), Some(1));
        assert_eq!(i.multiplicity(&Weight::integral(&[1, 0, 0, 0])), Some(0));
        assert_eq!(i.multiplicity(&Weight::integral(&[1, 1, 0, 0])), Some(1));
        let ii = branching_induction_oracle(2, SigmaType::II, 1, d).unwrap();
        assert_eq!(ii.multiplicity(&Weight::zero(4)), Some(0));
        assert_eq!(ii.multiplicity(&Weight::integral(&[1, 0, 0, 0])), Some(1));
        let iii = branching_induction_oracle(2, SigmaType::III, 2, d).unwrap();
        assert_eq!(
            iii.multiplicity(&Weight::half_integral(&[1, 1, 1, 1])),
            Some(1)
        );
        assert_eq!(
            iii.multiplicity(&Weight::half_integral(&[1, 1, 1, -1])),
            Some(0)
        );
    }

    #[test]
    fn branching_examples_p1() {
        // At p = 1 the spin tensor squares land in the swapped families
        // (the odd-p behavior of the product formulas).
        let d = caps().d_char;
        let ii = branching_induction_oracle(1, SigmaType::II, 1, d).unwrap();
        assert_eq!(ii.multiplicity(&Weight::zero(2)), Some(1));
        let iii = branching_induction_oracle(1, SigmaType::III, 1, d).unwrap();
        assert_eq!(iii.multiplicity(&Weight::half_integral(&[1, 1])), Some(1));
    }
}
