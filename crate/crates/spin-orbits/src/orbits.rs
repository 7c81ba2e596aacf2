//! Nilpotent orbits of `so(2n)`: partition labels, the small-orbit list,
//! dimension formulas, `sl(2)`-triples, graded centralizers, component
//! groups, and infinitesimal characters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{nullspace, rat, Rat};
use crate::weight::Weight;
use crate::{Error, Result};

/// Numeral distinguishing the two orbits of a very even partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tag {
    I,
    II,
}

/// A nilpotent orbit of `so(2n)`: a partition of `2n` in which every even
/// part has even multiplicity, with an `I`/`II` tag exactly when all parts
/// are even.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitLabel {
    parts: Vec<u32>,
    tag: Option<Tag>,
}

impl OrbitLabel {
    pub fn new(parts: Vec<u32>, tag: Option<Tag>) -> Result<OrbitLabel> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?}: empty or zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?}: not weakly decreasing")));
        }
        let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
        for &p in &parts {
            *mult.entry(p).or_insert(0) += 1;
        }
        for (&p, &m) in &mult {
            if p % 2 == 0 && m % 2 != 0 {
                return Err(Error::InvalidPartition(format!(
                    "{parts:?}: even part {p} has odd multiplicity {m}"
                )));
            }
        }
        let very_even = parts.iter().all(|&p| p % 2 == 0);
        match (very_even, tag) {
            (true, None) => Err(Error::InvalidPartition(format!(
                "{parts:?}: very even partition needs a I/II tag"
            ))),
            (false, Some(_)) => Err(Error::InvalidPartition(format!(
                "{parts:?}: tag only allowed for very even partitions"
            ))),
            _ => Ok(OrbitLabel { parts, tag }),
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn tag(&self) -> Option<Tag> {
        self.tag
    }

    pub fn part_sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Multiplicity of each part size.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0usize) += 1;
        }
        m
    }

    /// Number of distinct odd part sizes.
    pub fn distinct_odd_sizes(&self) -> usize {
        self.multiplicities().keys().filter(|p| *p % 2 == 1).count()
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")?;
        match self.tag {
            Some(Tag::I) => write!(f, "_I"),
            Some(Tag::II) => write!(f, "_II"),
            None => Ok(()),
        }
    }
}

impl FromStr for OrbitLabel {
    type Err = Error;

    /// Parses `3,2,2,1` or `2,2,2,2:I`.
    fn from_str(s: &str) -> Result<OrbitLabel> {
        let s = s.trim();
        let (body, tag) = match s.split_once(':') {
            Some((b, "I")) => (b, Some(Tag::I)),
            Some((b, "II")) => (b, Some(Tag::II)),
            Some((_, t)) => {
                return Err(Error::InvalidPartition(format!("unknown tag `{t}`")));
            }
            None => (s, None),
        };
        let parts: std::result::Result<Vec<u32>, _> =
            body.split(',').map(|p| p.trim().parse::<u32>()).collect();
        let parts = parts.map_err(|_| Error::InvalidPartition(format!("bad partition `{s}`")))?;
        OrbitLabel::new(parts, tag)
    }
}

/// Validates a partition against a rank: sum must be `2n`.
pub fn validate_partition(parts: &[u32], n: usize, tag: Option<Tag>) -> Result<OrbitLabel> {
    let label = OrbitLabel::new(parts.to_vec(), tag)?;
    if label.part_sum() as usize != 2 * n {
        return Err(Error::InvalidPartition(format!(
            "{label} sums to {} but 2n = {}",
            label.part_sum(),
            2 * n
        )));
    }
    Ok(label)
}

/// `dim O` from the dual partition:
/// `dim so(2n) - (sum (lambda*_i)^2 - #odd parts) / 2`.
pub fn orbit_dimension(label: &OrbitLabel, n: usize) -> u64 {
    let parts = label.parts();
    let top = parts[0] as usize;
    let mut dual_sq: u64 = 0;
    for i in 1..=top {
        let d = parts.iter().filter(|&&p| p as usize >= i).count() as u64;
        dual_sq += d * d;
    }
    let odd = parts.iter().filter(|&&p| p % 2 == 1).count() as u64;
    let so_dim = (n * (2 * n - 1)) as u64;
    so_dim - (dual_sq - odd) / 2
}

/// The dimension bound `dim O <= rank(k) + |positive roots| = n^2`,
/// necessary for uniformly bounded K-multiplicities.
pub fn is_small(label: &OrbitLabel, n: usize) -> bool {
    orbit_dimension(label, n) <= (n * n) as u64
}

/// Whether the orbit is spherical, i.e. has uniformly bounded
/// K-multiplicities in its ring of regular functions: the partition has no
/// part above 3 and at most one part equal to 3. This is the condition
/// carving out exactly the four case families; the dimension bound alone is
/// not sufficient for n >= 6 (e.g. `[3,3,1^6]` has dimension 34 <= 36 but
/// is not spherical).
pub fn is_spherical(label: &OrbitLabel) -> bool {
    let parts = label.parts();
    parts[0] <= 3 && parts.iter().filter(|&&p| p >= 3).count() <= 1
}

/// Which of the four closed-form cases a small orbit belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseId {
    /// `[3 2^{n-2} 1]`, `n` even.
    Case1,
    /// `[3 2^{2k} 1^{2n-4k-3}]` with tail length at least 3.
    Case2 { k: usize },
    /// `[2^n]_{I,II}`, `n` even.
    Case3,
    /// `[2^{2k} 1^{2n-4k}]`, `2k < n` (`k = 0` is the zero orbit).
    Case4 { k: usize },
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::Case1 => write!(f, "1"),
            CaseId::Case2 { k } => write!(f, "2(k={k})"),
            CaseId::Case3 => write!(f, "3"),
            CaseId::Case4 { k } => write!(f, "4(k={k})"),
        }
    }
}

impl CaseId {
    /// The closed-form dimension attached to the case.
    pub fn dimension_formula(&self, n: usize) -> u64 {
        let n = n as i64;
        let d = match self {
            CaseId::Case1 => n * n,
            CaseId::Case2 { k } => {
                let k = *k as i64;
                4 * n * k - 4 * k * k + 4 * n - 8 * k - 4
            }
            CaseId::Case3 => n * n - n,
            CaseId::Case4 { k } => {
                let k = *k as i64;
                4 * n * k - 4 * k * k - 2 * k
            }
        };
        d as u64
    }
}

/// Classifies a small orbit into its cases. A `[3 2^{2k} 1]` label is
/// reported as Case 1 only, never as the tail-1 edge of Case 2.
pub fn classify(label: &OrbitLabel, n: usize) -> Vec<CaseId> {
    let mult = label.multiplicities();
    let m = |p: u32| mult.get(&p).copied().unwrap_or(0);
    let distinct: Vec<u32> = mult.keys().copied().collect();
    let mut cases = Vec::new();
    if distinct.iter().all(|&p| p <= 3) {
        let (m1, m2, m3) = (m(1), m(2), m(3));
        if m3 == 1 && m1 >= 1 && m1 % 2 == 1 && m1 + 2 * m2 + 3 == 2 * n {
            if m1 == 1 && n % 2 == 0 {
                cases.push(CaseId::Case1);
            } else if m1 >= 3 && m2 % 2 == 0 {
                cases.push(CaseId::Case2 { k: m2 / 2 });
            }
        }
        if m3 == 0 && m1 == 0 && m2 == n {
            cases.push(CaseId::Case3);
        }
        if m3 == 0 && m2 % 2 == 0 && m2 < n && m1 + 2 * m2 == 2 * n {
            cases.push(CaseId::Case4 { k: m2 / 2 });
        }
    }
    cases
}

/// One row of the small-orbit atlas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallOrbit {
    pub label: OrbitLabel,
    pub cases: Vec<CaseId>,
    pub dim: u64,
}

/// All small orbits of `so(2n)` from the four case families, sorted.
pub fn enumerate_small_orbits(n: usize) -> Result<Vec<SmallOrbit>> {
    if n < 2 {
        return Err(Error::Invalid(format!("rank must be >= 2, got {n}")));
    }
    let mut out: Vec<SmallOrbit> = Vec::new();
    let mut push = |parts: Vec<u32>, tag: Option<Tag>| -> Result<()> {
        let label = validate_partition(&parts, n, tag)?;
        let cases = classify(&label, n);
        let dim = orbit_dimension(&label, n);
        debug_assert!(!cases.is_empty(), "{label} has no case id");
        out.push(SmallOrbit { label, cases, dim });
        Ok(())
    };
    if n % 2 == 0 {
        // Case 1
        let mut parts = vec![3];
        parts.extend(std::iter::repeat(2).take(n - 2));
        parts.push(1);
        push(parts, None)?;
        // Case 3
        push(vec![2; n], Some(Tag::I))?;
        push(vec![2; n], Some(Tag::II))?;
    }
    // Case 2 with genuine tail 2n - 4k - 3 >= 3
    let mut k = 0usize;
    while 2 * n >= 4 * k + 3 + 3 {
        let mut parts = vec![3];
        parts.extend(std::iter::repeat(2).take(2 * k));
        parts.extend(std::iter::repeat(1).take(2 * n - 4 * k - 3));
        push(parts, None)?;
        k += 1;
    }
    // Case 4, including the zero orbit at k = 0
    for k in 0..n.div_ceil(2) {
        let mut parts = vec![2; 2 * k];
        parts.extend(std::iter::repeat(1).take(2 * n - 4 * k));
        push(parts, None)?;
    }
    out.sort_by(|a, b| a.label.cmp(&b.label));
    out.dedup_by(|a, b| a.label == b.label);
    Ok(out)
}

/// All valid orbit labels for `so(2n)` (very even partitions listed with
/// both tags); brute-force substrate for checking the small-orbit list.
pub fn all_valid_partitions(n: usize) -> Vec<OrbitLabel> {
    fn gen(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            prefix.push(p);
            gen(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    gen(2 * n as u32, 2 * n as u32, &mut Vec::new(), &mut raw);
    let mut out = Vec::new();
    for parts in raw {
        let very_even = parts.iter().all(|&p| p % 2 == 0);
        if very_even {
            for tag in [Tag::I, Tag::II] {
                if let Ok(l) = validate_partition(&parts, n, Some(tag)) {
                    out.push(l);
                }
            }
        } else if let Ok(l) = validate_partition(&parts, n, None) {
            out.push(l);
        }
    }
    out.sort();
    out
}

/// A Chevalley basis element of `so(2n)`: a Cartan coordinate `H(e_i)` or a
/// root vector `X(alpha)` with `alpha = ±e_i ± e_j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChevLabel {
    /// `H(e_i)`, 0-based index.
    H(usize),
    /// `X(alpha)`; the root stored as a weight with two `±1` entries.
    X(Weight),
}

impl fmt::Display for ChevLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChevLabel::H(i) => write!(f, "H(e{})", i + 1),
            ChevLabel::X(root) => {
                write!(f, "X(")?;
                let mut first = true;
                for (i, c) in root.coords().iter().enumerate() {
                    let v = c.doubled() / 2;
                    if v == 0 {
                        continue;
                    }
                    if v > 0 && !first {
                        write!(f, "+")?;
                    }
                    if v < 0 {
                        write!(f, "-")?;
                    }
                    write!(f, "e{}", i + 1)?;
                    first = false;
                }
                write!(f, ")")
            }
        }
    }
}

/// Root `e_i - e_j` (0-based, `i != j`).
pub fn root_minus(i: usize, j: usize, n: usize) -> Weight {
    let mut c = vec![0i64; n];
    c[i] = 1;
    c[j] = -1;
    Weight::integral(&c)
}

/// Root `s * (e_i + e_j)` (0-based, `i < j`, `s = ±1`).
pub fn root_plus(i: usize, j: usize, s: i64, n: usize) -> Weight {
    let mut c = vec![0i64; n];
    c[i] = s;
    c[j] = s;
    Weight::integral(&c)
}

/// The full Chevalley basis of `so(2n)`: `n` Cartan elements and `2n(n-1)`
/// root vectors.
pub fn chevalley_basis(n: usize) -> Vec<ChevLabel> {
    let mut basis: Vec<ChevLabel> = (0..n).map(ChevLabel::H).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            basis.push(ChevLabel::X(root_minus(i, j, n)));
            basis.push(ChevLabel::X(root_minus(j, i, n)));
            basis.push(ChevLabel::X(root_plus(i, j, 1, n)));
            basis.push(ChevLabel::X(root_plus(i, j, -1, n)));
        }
    }
    basis
}

/// The `2n x 2n` matrix of a Chevalley element in the standard module, in
/// the basis `u_1..u_n, u_{-1}..u_{-n}` with `Q(u_i, u_{-j}) = delta_ij`:
/// `H(e_i) = E_ii - E_{-i,-i}`, `X(e_i - e_j) = E_ij - E_{-j,-i}`,
/// `X(e_i + e_j) = E_{i,-j} - E_{j,-i}`, `X(-e_i - e_j) = E_{-i,j} - E_{-j,i}`.
pub fn so_matrix(label: &ChevLabel, n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; 2 * n]; 2 * n];
    match label {
        ChevLabel::H(i) => {
            m[*i][*i] = 1;
            m[n + i][n + i] = -1;
        }
        ChevLabel::X(root) => {
            let nz: Vec<(usize, i64)> = root
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.doubled().is_zero())
                .map(|(i, c)| (i, c.doubled() / 2))
                .collect();
            assert_eq!(nz.len(), 2, "root must have two nonzero coordinates");
            let ((i, si), (j, sj)) = (nz[0], nz[1]);
            match (si, sj) {
                (1, -1) => {
                    m[i][j] = 1;
                    m[n + j][n + i] = -1;
                }
                (-1, 1) => {
                    m[j][i] = 1;
                    m[n + i][n + j] = -1;
                }
                (1, 1) => {
                    m[i][n + j] = 1;
                    m[j][n + i] = -1;
                }
                (-1, -1) => {
                    m[n + i][j] = 1;
                    m[n + j][i] = -1;
                }
                _ => unreachable!("root coordinates must be ±1"),
            }
        }
    }
    m
}

/// `[a, b] = ab - ba` for dense integer matrices.
pub fn commutator(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = a.len();
    let mut out = vec![vec![0i64; d]; d];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let mut s = 0i64;
            for k in 0..d {
                s += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            }
            *x = s;
        }
    }
    out
}

/// The `sl(2)`-triple data used for a small orbit: `e` as a sum of root
/// vectors (all coefficients 1) and the semisimple element `h = H(c_1..c_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: Vec<ChevLabel>,
    pub h: Weight,
}

impl Sl2Triple {
    pub fn e_matrix(&self, n: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; 2 * n]; 2 * n];
        for term in &self.e {
            let t = so_matrix(term, n);
            for i in 0..2 * n {
                for j in 0..2 * n {
                    m[i][j] += t[i][j];
                }
            }
        }
        m
    }

    pub fn h_matrix(&self, n: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; 2 * n]; 2 * n];
        for i in 0..n {
            let c = self.h.coord(i).to_int();
            m[i][i] = c;
            m[n + i][n + i] = -c;
        }
        m
    }
}

/// The orbit representative: Cases 1/2 use
/// `e = X(e_1 - e_{2k+2}) + X(e_1 + e_{2k+2}) + sum_{i=2}^{k+1} X(e_i + e_{k+i})`
/// with `h = H(2, 1^{2k}, 0^{n-1-2k})`; Cases 3/4 use sums of
/// `X(e_{2i-1} + e_{2i})` with `h = H(1^{2k}, 0^{n-2k})`, the `II` form
/// replacing the last term by `X(e_{n-1} - e_n)` and `h` by `H(1,..,1,-1)`.
pub fn sl2_triple(label: &OrbitLabel, n: usize) -> Result<Sl2Triple> {
    let cases = classify(label, n);
    let case = cases
        .first()
        .ok_or_else(|| Error::UnsupportedOrbit(label.to_string()))?;
    let triple = match case {
        CaseId::Case1 | CaseId::Case2 { .. } => {
            let k = match case {
                CaseId::Case1 => (n - 2) / 2,
                CaseId::Case2 { k } => *k,
                _ => unreachable!(),
            };
            let mut e = vec![
                ChevLabel::X(root_minus(0, 2 * k + 1, n)),
                ChevLabel::X(root_plus(0, 2 * k + 1, 1, n)),
            ];
            // pairs (i, k+i) for 2 <= i <= k+1, here 0-based
            for i in 1..=k {
                e.push(ChevLabel::X(root_plus(i, k + i, 1, n)));
            }
            let mut h = vec![0i64; n];
            h[0] = 2;
            for c in h.iter_mut().take(2 * k + 1).skip(1) {
                *c = 1;
            }
            Sl2Triple {
                e,
                h: Weight::integral(&h),
            }
        }
        CaseId::Case4 { k } => {
            let e = (0..*k)
                .map(|i| ChevLabel::X(root_plus(2 * i, 2 * i + 1, 1, n)))
                .collect();
            let mut h = vec![0i64; n];
            for c in h.iter_mut().take(2 * k) {
                *c = 1;
            }
            Sl2Triple {
                e,
                h: Weight::integral(&h),
            }
        }
        CaseId::Case3 => {
            let p = n / 2;
            let mut e: Vec<ChevLabel> = (0..p - 1)
                .map(|i| ChevLabel::X(root_plus(2 * i, 2 * i + 1, 1, n)))
                .collect();
            let mut h = vec![1i64; n];
            match label.tag() {
                Some(Tag::I) => {
                    e.push(ChevLabel::X(root_plus(n - 2, n - 1, 1, n)));
                }
                Some(Tag::II) => {
                    e.push(ChevLabel::X(root_minus(n - 2, n - 1, n)));
                    h[n - 1] = -1;
                }
                None => unreachable!(),
            }
            Sl2Triple {
                e,
                h: Weight::integral(&h),
            }
        }
    };
    Ok(triple)
}

/// One classical factor of a Levi subalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeviFactor {
    Sp(usize),
    So(usize),
}

impl LeviFactor {
    pub fn dim(&self) -> usize {
        match self {
            LeviFactor::Sp(m) => m * (m + 1) / 2,
            LeviFactor::So(m) => m * m.saturating_sub(1) / 2,
        }
    }
}

impl fmt::Display for LeviFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeviFactor::Sp(m) => write!(f, "sp({m})"),
            LeviFactor::So(m) => write!(f, "so({m})"),
        }
    }
}

/// The centralizer `c(e)` in `so(2n)`, graded by the eigenvalue of `ad h`.
/// Each graded piece is a basis of exact combinations of Chevalley elements.
#[derive(Debug, Clone)]
pub struct GradedCentralizer {
    pub levi: Vec<LeviFactor>,
    pub pieces: BTreeMap<i64, Vec<Vec<(Rat, ChevLabel)>>>,
    /// Case-1 complement `n^perp = Span{X(e_1 - e_j), 2 <= j <= n-1}`.
    pub n_perp: Option<Vec<ChevLabel>>,
}

impl GradedCentralizer {
    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(|v| v.len()).sum()
    }

    pub fn degree_dim(&self, d: i64) -> usize {
        self.pieces.get(&d).map_or(0, |v| v.len())
    }
}

/// Computes `c(e)` degree by degree by solving `[x, e] = 0` exactly inside
/// each `ad h`-eigenspace of `so(2n)` (the kernel is graded since `e` has
/// degree 2).
pub fn graded_centralizer(label: &OrbitLabel, n: usize) -> Result<GradedCentralizer> {
    let triple = sl2_triple(label, n)?;
    let e_mat = triple.e_matrix(n);
    let basis = chevalley_basis(n);

    // group basis elements by h-degree
    let mut by_degree: BTreeMap<i64, Vec<&ChevLabel>> = BTreeMap::new();
    for b in &basis {
        let d = match b {
            ChevLabel::H(_) => 0,
            ChevLabel::X(root) => root.dot4(&triple.h) / 4,
        };
        by_degree.entry(d).or_default().push(b);
    }

    let mut pieces: BTreeMap<i64, Vec<Vec<(Rat, ChevLabel)>>> = BTreeMap::new();
    for (d, elems) in &by_degree {
        // rows: one equation per matrix entry of [x, e]
        let mats: Vec<Vec<Vec<i64>>> = elems.iter().map(|b| {
            let bm = so_matrix(b, n);
            commutator(&bm, &e_mat)
        }).collect();
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for i in 0..2 * n {
            for j in 0..2 * n {
                if mats.iter().any(|m| m[i][j] != 0) {
                    rows.push(mats.iter().map(|m| rat(m[i][j])).collect());
                }
            }
        }
        let kernel = nullspace(&rows, elems.len());
        if kernel.is_empty() {
            continue;
        }
        let combos: Vec<Vec<(Rat, ChevLabel)>> = kernel
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .zip(elems.iter())
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, b)| (c, (*b).clone()))
                    .collect()
            })
            .collect();
        pieces.insert(*d, combos);
    }

    let cases = classify(label, n);
    let levi = match cases.first().unwrap() {
        CaseId::Case1 => vec![LeviFactor::Sp(n - 2), LeviFactor::So(1)],
        CaseId::Case2 { k } => vec![LeviFactor::Sp(2 * k), LeviFactor::So(2 * n - 3 - 4 * k)],
        CaseId::Case3 => vec![LeviFactor::Sp(n), LeviFactor::So(0)],
        CaseId::Case4 { k } => vec![LeviFactor::Sp(2 * k), LeviFactor::So(2 * n - 4 * k)],
    };

    let n_perp = match cases.first().unwrap() {
        CaseId::Case1 => Some(
            (1..n - 1)
                .map(|j| ChevLabel::X(root_minus(0, j, n)))
                .collect(),
        ),
        _ => None,
    };

    let gc = GradedCentralizer {
        levi,
        pieces,
        n_perp,
    };
    let expected = (n * (2 * n - 1)) as u64 - orbit_dimension(label, n);
    assert_eq!(
        gc.total_dim() as u64,
        expected,
        "dim c(e) must be dim so(2n) - dim O for {label}"
    );
    let levi_dim: usize = gc.levi.iter().map(|f| f.dim()).sum();
    assert_eq!(
        gc.degree_dim(0),
        levi_dim,
        "degree-0 piece of c(e) must match the Levi for {label}"
    );
    Ok(gc)
}

/// Which group the component group is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    SO,
    Spin,
}

/// Isomorphism type of a component group (always an elementary abelian
/// 2-group here).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupType {
    pub exponent2_rank: u32,
}

impl GroupType {
    pub fn order(&self) -> u64 {
        1u64 << self.exponent2_rank
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent2_rank {
            0 => write!(f, "1"),
            1 => write!(f, "Z2"),
            2 => write!(f, "Z2xZ2"),
            r => write!(f, "Z2^{r}"),
        }
    }
}

/// Component group of the orbit centralizer in `SO` or `Spin`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentGroupDescriptor {
    pub ambient: Ambient,
    pub group_type: GroupType,
    /// Clifford-element names generating the group modulo the identity
    /// component (Spin only).
    pub generators: Vec<String>,
}

/// `A_SO(O) = Z_2^{max(m-1, 0)}` with `m` the number of distinct odd part
/// sizes. For Spin: the same group when some odd size has multiplicity
/// `> 1`; otherwise a central extension by `-I` of order `2^m`.
pub fn component_group(label: &OrbitLabel, ambient: Ambient) -> ComponentGroupDescriptor {
    let mult = label.multiplicities();
    let odd_sizes: Vec<u32> = mult.keys().copied().filter(|p| p % 2 == 1).collect();
    let m = odd_sizes.len() as u32;
    let some_odd_repeated = odd_sizes.iter().any(|p| mult[p] > 1);
    match ambient {
        Ambient::SO => ComponentGroupDescriptor {
            ambient,
            group_type: GroupType {
                exponent2_rank: m.saturating_sub(1),
            },
            generators: Vec::new(),
        },
        Ambient::Spin => {
            if some_odd_repeated {
                ComponentGroupDescriptor {
                    ambient,
                    group_type: GroupType {
                        exponent2_rank: m.saturating_sub(1),
                    },
                    generators: Vec::new(),
                }
            } else {
                // all odd sizes distinct: A is generated by -I together with
                // even products of the blockwise Ep elements
                let mut generators = vec!["-I".to_string()];
                let mut prev: Option<u32> = None;
                for &p in odd_sizes.iter().rev() {
                    if let Some(q) = prev {
                        generators.push(format!("Ep{q}*Ep{p}"));
                    }
                    prev = Some(p);
                }
                ComponentGroupDescriptor {
                    ambient,
                    // central extension of Z_2^{m-1} by {±I}
                    group_type: GroupType {
                        exponent2_rank: m.saturating_sub(1) + 1,
                    },
                    generators,
                }
            }
        }
    }
}

/// A quarter-integer, stored as four times its value; infinitesimal
/// characters in Case 3 live in `(1/4)Z` and mix parities, so they do not
/// fit the `Weight` invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Quarter(pub i64);

impl Quarter {
    pub fn from_int(v: i64) -> Quarter {
        Quarter(4 * v)
    }

    pub fn from_halves(num: i64) -> Quarter {
        Quarter(2 * num)
    }
}

impl fmt::Display for Quarter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 4 == 0 {
            write!(f, "{}", self.0 / 4)
        } else if self.0 % 2 == 0 {
            write!(f, "{}/2", self.0 / 2)
        } else {
            write!(f, "{}/4", self.0)
        }
    }
}

/// The infinitesimal character attached to a small orbit, in the printed
/// coordinate order; `separator` is the position of the `|` (or `;`)
/// splitting the two blocks when present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinitesimalCharacter {
    pub coords: Vec<Quarter>,
    pub separator: Option<usize>,
}

impl fmt::Display for InfinitesimalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                if self.separator == Some(i) {
                    write!(f, "|")?;
                } else {
                    write!(f, ",")?;
                }
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The printed `lambda_O`:
/// Case 1: `rho/2 = (p-1/2, ..., 1/2 | p-1, ..., 0)`;
/// Case 2: `(k+1/2, ..., 1/2 | n-k-2, ..., 0)`;
/// Case 3: `((2n-1)/4, (2n-5)/4, ..., -(2n-3)/4)` with the last sign
/// positive for the `II` orbit;
/// Case 4: `(k, ..., 1; n-k-1, ..., 0)`.
pub fn infinitesimal_character(label: &OrbitLabel, n: usize) -> Result<InfinitesimalCharacter> {
    let cases = classify(label, n);
    let case = cases
        .first()
        .ok_or_else(|| Error::UnsupportedOrbit(label.to_string()))?;
    let ic = match case {
        CaseId::Case1 => {
            let p = n / 2;
            let mut coords: Vec<Quarter> =
                (0..p).map(|i| Quarter::from_halves(2 * (p - i) as i64 - 1)).collect();
            coords.extend((0..p).map(|i| Quarter::from_int((p - 1 - i) as i64)));
            InfinitesimalCharacter {
                coords,
                separator: Some(p),
            }
        }
        CaseId::Case2 { k } => {
            let mut coords: Vec<Quarter> =
                (0..=*k).map(|i| Quarter::from_halves(2 * (k - i) as i64 + 1)).collect();
            coords.extend((0..n - k - 1).map(|i| Quarter::from_int((n - k - 2 - i) as i64)));
            InfinitesimalCharacter {
                coords,
                separator: Some(k + 1),
            }
        }
        CaseId::Case3 => {
            let top = 2 * n as i64 - 1;
            let mut coords: Vec<Quarter> = (0..n as i64).map(|t| Quarter(top - 4 * t)).collect();
            if label.tag() == Some(Tag::II) {
                let last = coords.len() - 1;
                coords[last] = Quarter(-coords[last].0);
            }
            InfinitesimalCharacter {
                coords,
                separator: None,
            }
        }
        CaseId::Case4 { k } => {
            let mut coords: Vec<Quarter> =
                (0..*k).map(|i| Quarter::from_int((k - i) as i64)).collect();
            coords.extend((0..n - k).map(|i| Quarter::from_int((n - k - 1 - i) as i64)));
            InfinitesimalCharacter {
                coords,
                separator: Some(*k),
            }
        }
    };
    Ok(ic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> OrbitLabel {
        s.parse().unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(validate_partition(&[3, 2, 2, 1], 4, None).is_ok());
        assert!(validate_partition(&[2, 2, 2, 2], 4, Some(Tag::I)).is_ok());
        // even part with odd multiplicity
        assert!(validate_partition(&[3, 3, 2], 4, None).is_err());
        // very even needs a tag
        assert!(validate_partition(&[2, 2, 2, 2], 4, None).is_err());
        // wrong sum
        assert!(validate_partition(&[3, 2, 2, 1], 5, None).is_err());
    }

    #[test]
    fn label_parsing() {
        assert_eq!(label("3,2,2,1").parts(), &[3, 2, 2, 1]);
        assert_eq!(label("2,2,2,2:I").tag(), Some(Tag::I));
        assert_eq!(label("2,2,2,2:II").to_string(), "[2,2,2,2]_II");
        assert!("2,2,2,2:X".parse::<OrbitLabel>().is_err());
        assert!("3,2".parse::<OrbitLabel>().is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(orbit_dimension(&label("3,2,2,1"), 4), 16);
        assert_eq!(orbit_dimension(&label("2,2,1,1,1,1"), 4), 10);
        assert_eq!(orbit_dimension(&label("2,2,2,2:I"), 4), 12);
        assert_eq!(orbit_dimension(&label("1,1,1,1,1,1,1,1"), 4), 0);
        assert_eq!(orbit_dimension(&label("5,1,1,1"), 4), 20);
    }

    #[test]
    fn smallness() {
        assert!(is_small(&label("3,2,2,1"), 4));
        assert!(!is_small(&label("5,1,1,1"), 4));
        assert!(is_small(&label("1,1,1,1,1,1,1,1"), 4));
    }

    #[test]
    fn small_orbit_list_n2() {
        let got: Vec<String> = enumerate_small_orbits(2)
            .unwrap()
            .iter()
            .map(|o| o.label.to_string())
            .collect();
        assert_eq!(got, vec!["[1,1,1,1]", "[2,2]_I", "[2,2]_II", "[3,1]"]);
    }

    #[test]
    fn small_orbit_list_matches_brute_force() {
        for n in 2..=8 {
            let listed: Vec<OrbitLabel> = enumerate_small_orbits(n)
                .unwrap()
                .into_iter()
                .map(|o| o.label)
                .collect();
            let scanned: Vec<OrbitLabel> = all_valid_partitions(n)
                .into_iter()
                .filter(is_spherical)
                .collect();
            assert_eq!(listed, scanned, "n = {n}");
            // every listed orbit satisfies the dimension bound
            for l in &listed {
                assert!(is_small(l, n), "{l} at n = {n}");
            }
        }
    }

    #[test]
    fn dimension_bound_is_not_sufficient_beyond_n5() {
        // the bound dim O <= n^2 admits non-spherical orbits from n = 6 on
        let l = label("3,3,1,1,1,1,1,1");
        assert!(is_small(&l, 6) && !is_spherical(&l));
        assert_eq!(orbit_dimension(&l, 6), 34);
        let l = label("5,1,1,1,1,1,1,1");
        assert!(is_small(&l, 6) && !is_spherical(&l));
        assert_eq!(orbit_dimension(&l, 6), 36);
        for n in 2..=5 {
            for l in all_valid_partitions(n) {
                assert_eq!(is_small(&l, n), is_spherical(&l), "{l} at n = {n}");
            }
        }
    }

    #[test]
    fn case_formulas_agree() {
        for n in 2..=8 {
            for orbit in enumerate_small_orbits(n).unwrap() {
                for case in &orbit.cases {
                    assert_eq!(
                        orbit.dim,
                        case.dimension_formula(n),
                        "{} case {case} at n={n}",
                        orbit.label
                    );
                }
            }
        }
    }

    #[test]
    fn sl2_bracket_he_is_2e() {
        for n in 2..=6 {
            for orbit in enumerate_small_orbits(n).unwrap() {
                let t = sl2_triple(&orbit.label, n).unwrap();
                for term in &t.e {
                    let root = match term {
                        ChevLabel::X(r) => r,
                        _ => panic!("e must be a sum of root vectors"),
                    };
                    assert_eq!(
                        root.dot4(&t.h) / 4,
                        2,
                        "term {term} of {} has wrong h-degree",
                        orbit.label
                    );
                }
                // matrix-level check
                let e = t.e_matrix(n);
                let h = t.h_matrix(n);
                let br = commutator(&h, &e);
                let twice: Vec<Vec<i64>> =
                    e.iter().map(|r| r.iter().map(|x| 2 * x).collect()).collect();
                assert_eq!(br, twice, "{}", orbit.label);
            }
        }
    }

    #[test]
    fn sl2_jordan_type_matches_partition() {
        // the rank sequence of powers of e determines the Jordan type
        for n in 2..=5 {
            for orbit in enumerate_small_orbits(n).unwrap() {
                let t = sl2_triple(&orbit.label, n).unwrap();
                let e = t.e_matrix(n);
                let mut parts: Vec<u32> = Vec::new();
                // number of Jordan blocks of size >= s is rank(e^{s-1}) - rank(e^s)
                let dim = 2 * n;
                let mut power: Vec<Vec<Rat>> = (0..dim)
                    .map(|i| (0..dim).map(|j| rat((i == j) as i64)).collect())
                    .collect();
                let mut ranks = vec![dim];
                loop {
                    let mut next = vec![vec![Rat::zero(); dim]; dim];
                    for i in 0..dim {
                        for j in 0..dim {
                            let mut s = Rat::zero();
                            for k in 0..dim {
                                s += &power[i][k] * rat(e[k][j]);
                            }
                            next[i][j] = s;
                        }
                    }
                    power = next;
                    let r = crate::linalg::rank(&power, dim);
                    ranks.push(r);
                    if r == 0 {
                        break;
                    }
                }
                // #blocks of size exactly s = r_{s-1} - 2 r_s + r_{s+1}
                for s in 1..ranks.len() {
                    let r = |i: usize| ranks.get(i).copied().unwrap_or(0) as i64;
                    let count = r(s - 1) - 2 * r(s) + r(s + 1);
                    for _ in 0..count {
                        parts.push(s as u32);
                    }
                }
                parts.sort_unstable_by(|a, b| b.cmp(a));
                assert_eq!(parts, orbit.label.parts(), "{} at n={n}", orbit.label);
            }
        }
    }

    #[test]
    fn graded_centralizer_dims() {
        for n in 2..=5 {
            for orbit in enumerate_small_orbits(n).unwrap() {
                // construction asserts total and degree-0 dims internally;
                // the centralizer of e lives in nonnegative h-degrees
                let gc = graded_centralizer(&orbit.label, n).unwrap();
                assert!(gc.pieces.keys().all(|d| *d >= 0), "{}", orbit.label);
            }
        }
    }

    #[test]
    fn case1_graded_pieces_n4() {
        let gc = graded_centralizer(&label("3,2,2,1"), 4).unwrap();
        assert_eq!(gc.levi, vec![LeviFactor::Sp(2), LeviFactor::So(1)]);
        assert_eq!(gc.degree_dim(0), 3);
        // C(e)_3 = Span{X(e_1 + e_i), 2 <= i <= 3}
        assert_eq!(gc.degree_dim(3), 2);
        let n_perp = gc.n_perp.unwrap();
        assert_eq!(n_perp.len(), 2);
    }

    #[test]
    fn component_groups() {
        let spin = |s: &str| component_group(&label(s), Ambient::Spin);
        let so = |s: &str| component_group(&label(s), Ambient::SO);
        assert_eq!(spin("3,2,2,1").group_type.to_string(), "Z2xZ2");
        assert_eq!(so("3,2,2,1").group_type.to_string(), "Z2");
        assert_eq!(spin("2,2,2,2:I").group_type.to_string(), "Z2");
        assert_eq!(so("2,2,2,2:I").group_type.to_string(), "1");
        assert_eq!(spin("2,2,1,1,1,1").group_type.to_string(), "1");
        assert_eq!(spin("3,1,1,1,1,1").group_type.to_string(), "Z2");
        assert_eq!(spin("1,1,1,1,1,1,1,1").group_type.to_string(), "1");
        assert_eq!(spin("3,2,2,1").generators, vec!["-I", "Ep3*Ep1"]);
    }

    #[test]
    fn infinitesimal_characters() {
        let ic = |s: &str, n: usize| infinitesimal_character(&label(s), n).unwrap().to_string();
        assert_eq!(ic("3,2,2,1", 4), "(3/2,1/2|1,0)");
        assert_eq!(ic("3,1,1,1,1,1", 4), "(1/2|2,1,0)");
        assert_eq!(ic("2,2,1,1,1,1", 4), "(1|2,1,0)");
        assert_eq!(ic("2,2,2,2:I", 4), "(7/4,3/4,-1/4,-5/4)");
        assert_eq!(ic("2,2,2,2:II", 4), "(7/4,3/4,-1/4,5/4)");
    }
}
