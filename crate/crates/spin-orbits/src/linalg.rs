//! Exact rational sparse linear algebra: echelon bases, span membership,
//! and nullspaces. No floating point.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse vector over the rationals, keyed by a dense coordinate index.
/// Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    pub entries: BTreeMap<u64, Rat>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec::default()
    }

    pub fn unit(idx: u64) -> SparseVec {
        let mut v = SparseVec::new();
        v.entries.insert(idx, Rat::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Smallest coordinate with a nonzero entry.
    pub fn leading(&self) -> Option<(u64, &Rat)> {
        self.entries.iter().next().map(|(k, v)| (*k, v))
    }

    pub fn get(&self, idx: u64) -> Option<&Rat> {
        self.entries.get(&idx)
    }

    pub fn insert(&mut self, idx: u64, value: Rat) {
        if value.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, value);
        }
    }

    pub fn add_term(&mut self, idx: u64, value: &Rat) {
        if value.is_zero() {
            return;
        }
        let entry = self.entries.entry(idx).or_insert_with(Rat::zero);
        *entry += value;
        if entry.is_zero() {
            self.entries.remove(&idx);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rat, other: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (idx, v) in &other.entries {
            self.add_term(*idx, &(c * v));
        }
    }

    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for v in self.entries.values_mut() {
            *v *= c;
        }
    }

    /// Rescales so the leading entry is 1 and the entries have no common
    /// denominator blowup.
    pub fn normalize(&mut self) {
        if let Some((_, lead)) = self.leading() {
            let inv = lead.recip();
            self.scale(&inv);
        }
    }
}

/// Row-echelon collection of sparse vectors with pairwise distinct pivots.
///
/// Each stored vector's leading coordinate is its pivot; vectors are not
/// back-substituted against each other, which keeps insertion cheap while
/// still supporting exact span membership by pivot peeling.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    by_pivot: BTreeMap<u64, SparseVec>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn dim(&self) -> usize {
        self.by_pivot.len()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &SparseVec> {
        self.by_pivot.values()
    }

    /// Reduces `v` against the basis. Returns the (normalized) remainder if
    /// it is independent, after inserting it; `None` if `v` was in the span.
    pub fn insert(&mut self, mut v: SparseVec) -> Option<&SparseVec> {
        loop {
            let (lead, coeff) = match v.leading() {
                None => return None,
                Some((l, c)) => (l, c.clone()),
            };
            match self.by_pivot.get(&lead) {
                Some(basis_vec) => {
                    let c = -coeff; // basis vectors are normalized to lead 1
                    v.add_scaled(&c, basis_vec);
                }
                None => {
                    v.normalize();
                    return Some(self.by_pivot.entry(lead).or_insert(v));
                }
            }
        }
    }

    /// Expresses `v` in the stored vectors: returns `(pivot, coefficient)`
    /// pairs, or `None` if `v` is not in the span.
    pub fn express(&self, v: &SparseVec) -> Option<Vec<(u64, Rat)>> {
        let mut v = v.clone();
        let mut coeffs = Vec::new();
        loop {
            let (lead, coeff) = match v.leading() {
                None => return Some(coeffs),
                Some((l, c)) => (l, c.clone()),
            };
            let basis_vec = self.by_pivot.get(&lead)?;
            let c = -coeff.clone();
            v.add_scaled(&c, basis_vec);
            coeffs.push((lead, coeff));
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.express(v).is_some()
    }
}

/// Dense rational matrix given as rows; returns a basis of the right
/// nullspace `{x : A x = 0}` as dense vectors of length `ncols`.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut mat: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = mat.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        // find a pivot row
        let mut pr = None;
        for (i, row) in mat.iter().enumerate().skip(r).take(nrows - r) {
            if !row[c].is_zero() {
                pr = Some(i);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        mat.swap(r, pr);
        let inv = mat[r][c].recip();
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &mat[r][j];
                    mat[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut x = vec![Rat::zero(); ncols];
        x[free] = Rat::one();
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = -mat[ri][free].clone();
        }
        basis.push(x);
    }
    basis
}

/// Rank of a dense rational matrix.
pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    ncols - nullspace(rows, ncols).len()
}

/// Clears denominators and common content; handy for readable bases.
pub fn to_primitive_integers(v: &[Rat]) -> Vec<BigInt> {
    use num::Integer;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    // normalize sign of first nonzero entry
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -x.clone();
            }
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(u64, i64)]) -> SparseVec {
        let mut v = SparseVec::new();
        for &(i, c) in entries {
            v.insert(i, rat(c));
        }
        v
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(sv(&[(0, 1), (1, 1)])).is_some());
        assert!(e.insert(sv(&[(1, 1), (2, 1)])).is_some());
        // (1,0,-1) = first - second
        let target = sv(&[(0, 1), (2, -1)]);
        let coeffs = e.express(&target).unwrap();
        assert_eq!(coeffs.len(), 2);
        assert!(e.insert(target).is_none());
        assert!(!e.contains(&sv(&[(3, 1)])));
        assert_eq!(e.dim(), 2);
    }

    #[test]
    fn nullspace_small() {
        // x + y + z = 0, x - z = 0  =>  kernel spanned by (1, -2, 1)
        let rows = vec![
            vec![rat(1), rat(1), rat(1)],
            vec![rat(1), rat(0), rat(-1)],
        ];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!(&v[0] + &v[1] + &v[2], rat(0));
        assert_eq!(&v[0] - &v[2], rat(0));
    }

    #[test]
    fn primitive_integers() {
        let v = vec![rat_frac(1, 2), rat_frac(-3, 4), rat(1)];
        let ints = to_primitive_integers(&v);
        assert_eq!(ints, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(4)]);
    }
}
