//! Spikes given by their diagonal: special standard representations,
//! circuit-hyperplane signatures, swapping and weak-equivalence classes.
//!
//! A diagonal `x = (x_1, ..., x_n)` of nonzero residues determines the
//! `n x (2n+1)` matrix `[I | 1 | 1 + diag(x)]` whose columns are labelled
//! `e_1..e_n`, the tip `t`, and the conjugates `f_1..f_n`. Line `L_i` is
//! `{e_i, t, f_i}`.
//!
//! The transversal taking `f_i` for `i` in `K` and `e_j` elsewhere has
//! determinant `(1 + sum_{i in K} 1/x_i) * prod_{i in K} x_i`, so it is
//! dependent exactly when the inverse entries over `K` sum to `-1`. Those
//! sets form the [`Signature`], and each one names a circuit-hyperplane.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{make_field, FieldElem, PrimeModulus};
use crate::matrix::{change_basis_standardize, MatrixGF};
use crate::subset::{gray_code_walk, IndexSet, SetFamily};

/// Largest `n` for which signatures are materialized.
pub const MAX_SIGNATURE_N: usize = 24;
/// Largest `n` for orbit enumeration under swaps and relabelling.
pub const MAX_ORBIT_N: usize = 7;
/// Largest `p` accepted by [`enumerate_spikes`].
pub const MAX_ENUMERATE_P: u32 = 13;

/// The diagonal of a special standard representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagonal {
    modulus: PrimeModulus,
    x: Vec<u32>,
}

impl Diagonal {
    /// From residues in `[1, p)`.
    pub fn new(modulus: PrimeModulus, x: Vec<u32>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::TooSmall(0));
        }
        for (i, &v) in x.iter().enumerate() {
            if v % modulus.get() == 0 {
                return Err(Error::ZeroEntry(i + 1));
            }
            if v >= modulus.get() {
                return Err(Error::Parse(format!("entry {v} is not a residue mod {}", modulus.get())));
            }
        }
        Ok(Diagonal { modulus, x })
    }

    /// From arbitrary integers, reduced mod p.
    pub fn from_integers(modulus: PrimeModulus, x: &[i64]) -> Result<Self> {
        Self::new(modulus, x.iter().map(|&v| modulus.reduce(v)).collect())
    }

    /// From the inverse entries `1/x_i`, given as integers.
    pub fn from_inverses(modulus: PrimeModulus, inv: &[i64]) -> Result<Self> {
        let x = inv
            .iter()
            .map(|&v| modulus.inv(modulus.reduce(v)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, x)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn p(&self) -> u32 {
        self.modulus.get()
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn values(&self) -> &[u32] {
        &self.x
    }

    pub fn elems(&self) -> Vec<FieldElem> {
        self.x.iter().map(|&v| self.modulus.elem(v as i64)).collect()
    }

    /// Residues of `1/x_i`.
    pub fn inverses(&self) -> Vec<u32> {
        self.x.iter().map(|&v| self.modulus.inv(v).expect("nonzero entry")).collect()
    }

    pub fn balanced(&self) -> Vec<i64> {
        self.x.iter().map(|&v| self.modulus.balanced(v)).collect()
    }

    pub fn balanced_inverses(&self) -> Vec<i64> {
        self.inverses().into_iter().map(|v| self.modulus.balanced(v)).collect()
    }

    /// `perm[i]` is the new 0-based position of coordinate `i`.
    pub fn permute(&self, perm: &[usize]) -> Diagonal {
        assert_eq!(perm.len(), self.n());
        let mut y = vec![0; self.n()];
        for (i, &v) in self.x.iter().enumerate() {
            y[perm[i]] = v;
        }
        Diagonal { modulus: self.modulus, x: y }
    }

    pub fn sorted(&self) -> Diagonal {
        let mut x = self.x.clone();
        x.sort_unstable();
        Diagonal { modulus: self.modulus, x }
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.x.iter().map(|v| v.to_string()).collect();
        write!(f, "p={};x={}", self.modulus.get(), xs.join(","))
    }
}

impl FromStr for Diagonal {
    type Err = Error;

    /// Parses `p=<prime>;x=<v1>,...,<vn>` with residues in `[1, p)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("{why} in {s:?}"));
        let s = s.trim();
        let (pp, xp) = s.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let p = pp
            .trim()
            .strip_prefix("p=")
            .ok_or_else(|| bad("expected 'p='"))?
            .trim()
            .parse::<u64>()
            .map_err(|_| bad("bad prime"))?;
        let modulus = make_field(p)?;
        let xs = xp.trim().strip_prefix("x=").ok_or_else(|| bad("expected 'x='"))?;
        let x = xs
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad("bad residue")))
            .collect::<Result<Vec<_>>>()?;
        Diagonal::new(modulus, x)
    }
}

impl Serialize for Diagonal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Ground-set element of a spike.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    E(usize),
    Tip,
    F(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::E(i) => write!(f, "e{i}"),
            Element::Tip => write!(f, "t"),
            Element::F(i) => write!(f, "f{i}"),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Column position of an element in a freshly built representation.
pub fn standard_column(n: usize, e: Element) -> usize {
    match e {
        Element::E(i) => i - 1,
        Element::Tip => n,
        Element::F(i) => n + i,
    }
}

/// A special standard representation with labelled columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpikeRep {
    matrix: MatrixGF,
    labels: Vec<Element>,
}

impl SpikeRep {
    pub fn from_parts(matrix: MatrixGF, labels: Vec<Element>) -> Self {
        assert_eq!(matrix.cols(), labels.len());
        SpikeRep { matrix, labels }
    }

    pub fn matrix(&self) -> &MatrixGF {
        &self.matrix
    }

    pub fn labels(&self) -> &[Element] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn has_standard_pattern(&self) -> bool {
        let n = self.n();
        let a = &self.matrix;
        if a.cols() != 2 * n + 1 {
            return false;
        }
        (0..n).all(|r| {
            (0..n).all(|c| a.raw(r, c) == u32::from(r == c))
                && a.raw(r, n) == 1
                && (0..n).all(|j| {
                    let v = a.raw(r, n + 1 + j);
                    if r == j {
                        v != 1
                    } else {
                        v == 1
                    }
                })
        })
    }

    /// Reads the diagonal back off the conjugate block.
    pub fn diagonal(&self) -> Result<Diagonal> {
        if !self.has_standard_pattern() {
            return Err(Error::MismatchedShape("not in special standard form".into()));
        }
        let n = self.n();
        let m = self.matrix.modulus();
        let x = (0..n).map(|i| m.sub(self.matrix.raw(i, n + 1 + i), 1)).collect();
        Diagonal::new(m, x)
    }

    pub fn check_axioms(&self) -> bool {
        check_axioms(&self.matrix)
    }
}

fn standard_matrix(x: &Diagonal) -> SpikeRep {
    let n = x.n();
    let m = x.modulus();
    let mut a = MatrixGF::zeros(m, n, 2 * n + 1);
    for r in 0..n {
        a.set_raw(r, r, 1);
        a.set_raw(r, n, 1);
        for j in 0..n {
            let v = if r == j { m.add(1, x.values()[j]) } else { 1 };
            a.set_raw(r, n + 1 + j, v);
        }
    }
    let mut labels: Vec<Element> = (1..=n).map(Element::E).collect();
    labels.push(Element::Tip);
    labels.extend((1..=n).map(Element::F));
    SpikeRep { matrix: a, labels }
}

pub fn build_rep(x: &Diagonal) -> Result<SpikeRep> {
    if x.n() < 3 {
        return Err(Error::TooSmall(x.n()));
    }
    Ok(standard_matrix(x))
}

/// Per-condition outcome of the spike axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// Every line has three pairwise non-parallel points.
    pub three_point_lines: bool,
    /// Every union of `k < n` lines has rank `k + 1`.
    pub proper_unions: bool,
    /// All lines together have rank `n`.
    pub full_rank: bool,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.three_point_lines && self.proper_unions && self.full_rank
    }
}

/// Checks the spike axioms with the rank oracle; columns are read as
/// `e_1..e_n, t, f_1..f_n`.
pub fn axiom_report(a: &MatrixGF) -> AxiomReport {
    let n = a.rows();
    let fail = AxiomReport { three_point_lines: false, proper_unions: false, full_rank: false };
    if n < 3 || a.cols() != 2 * n + 1 {
        return fail;
    }
    let line = |i: usize| [i, n, n + 1 + i];
    let three_point_lines = (0..n).all(|i| {
        let l = line(i);
        a.column_rank(&l) == 2
            && [(0, 1), (0, 2), (1, 2)].iter().all(|&(u, v)| a.column_rank(&[l[u], l[v]]) == 2)
    });
    let mut proper_unions = true;
    for bits in 1u32..(1u32 << n) - 1 {
        let k = bits.count_ones() as usize;
        let mut cols = vec![n];
        for i in (0..n).filter(|i| bits >> i & 1 == 1) {
            cols.push(i);
            cols.push(n + 1 + i);
        }
        if a.column_rank(&cols) != k + 1 {
            proper_unions = false;
            break;
        }
    }
    let full_rank = a.rank() == n;
    AxiomReport { three_point_lines, proper_unions, full_rank }
}

pub fn check_axioms(a: &MatrixGF) -> bool {
    axiom_report(a).holds()
}

/// The circuit-hyperplane index sets of a diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature(SetFamily);

impl Signature {
    pub fn from_family(f: SetFamily) -> Self {
        Signature(f)
    }

    pub fn family(&self) -> &SetFamily {
        &self.0
    }

    pub fn from_hex(n: usize, hex: &str) -> Option<Self> {
        let f = SetFamily::from_hex(n, hex)?;
        (!f.contains(IndexSet::EMPTY)).then_some(Signature(f))
    }

    /// `{ I xor S : I in self }`.
    pub fn translate(&self, s: IndexSet) -> Signature {
        Signature(self.0.map(|i| i.symmetric_difference(s)))
    }

    pub fn permute(&self, perm: &[usize]) -> Signature {
        Signature(self.0.map(|i| i.permute(perm)))
    }

    /// Members in increasing bit-index order.
    pub fn members(&self) -> Vec<IndexSet> {
        self.0.iter().collect()
    }

    /// Least member in the sorted-sequence order.
    pub fn lex_least(&self) -> Option<IndexSet> {
        self.0.iter().min_by(|a, b| a.lex_cmp(*b))
    }
}

impl Deref for Signature {
    type Target = SetFamily;
    fn deref(&self) -> &SetFamily {
        &self.0
    }
}

/// Exactly the nonempty `I` with `sum_{i in I} 1/x_i = -1`.
pub fn signature(x: &Diagonal) -> Result<Signature> {
    let n = x.n();
    if n > MAX_SIGNATURE_N {
        return Err(Error::TooLarge(format!("signature needs n <= {MAX_SIGNATURE_N}, got {n}")));
    }
    Ok(signature_of_inverses(x.modulus(), &x.inverses()))
}

/// Signature from raw inverse residues; no size check.
pub(crate) fn signature_of_inverses(m: PrimeModulus, z: &[u32]) -> Signature {
    let target = m.neg(1);
    let mut fam = SetFamily::empty(z.len());
    let mut sum = 0u32;
    gray_code_walk(z.len(), |s, step| {
        if let Some((i, added)) = step {
            sum = if added { m.add(sum, z[i - 1]) } else { m.sub(sum, z[i - 1]) };
        }
        if sum == target && !s.is_empty() {
            fam.insert(s);
        }
    });
    Signature(fam)
}

fn check_range(x: &Diagonal, k: IndexSet) -> Result<()> {
    if !k.is_subset(IndexSet::full(x.n())) {
        return Err(Error::MismatchedShape(format!("{k} is not a subset of [1,{}]", x.n())));
    }
    Ok(())
}

fn inverse_sum(x: &Diagonal, k: IndexSet) -> u32 {
    let m = x.modulus();
    k.iter().fold(0, |acc, i| m.add(acc, m.inv(x.values()[i - 1]).expect("nonzero")))
}

/// Whether taking `f_i` for `i` in `k` (and `e_j` elsewhere) gives a dependent set.
pub fn is_dependent_transversal(x: &Diagonal, k: IndexSet) -> bool {
    !k.is_empty() && inverse_sum(x, k) == x.modulus().neg(1)
}

/// Columns of `rep` forming the transversal with conjugates at `k`.
pub fn transversal_columns(n: usize, k: IndexSet) -> Vec<usize> {
    (1..=n)
        .map(|i| standard_column(n, if k.contains(i) { Element::F(i) } else { Element::E(i) }))
        .collect()
}

/// `{f_i : i in I} ∪ {e_j : j not in I}` for a signature member `I`.
pub fn circuit_hyperplane(x: &Diagonal, i: IndexSet) -> Result<BTreeSet<Element>> {
    check_range(x, i)?;
    if !is_dependent_transversal(x, i) {
        return Err(Error::NotInSignature(i.to_string()));
    }
    Ok((1..=x.n())
        .map(|j| if i.contains(j) { Element::F(j) } else { Element::E(j) })
        .collect())
}

/// Diagonal after exchanging `e_i` and `f_i` for every `i` in `s`.
///
/// With `sigma = 1 + sum_{i in s} 1/x_i`, the new entries are
/// `-x_i * sigma` on `s` and `x_j * sigma` off it.
pub fn swap(x: &Diagonal, s: IndexSet) -> Result<Diagonal> {
    check_range(x, s)?;
    if s.is_empty() {
        return Ok(x.clone());
    }
    let m = x.modulus();
    let sigma = m.add(1, inverse_sum(x, s));
    if sigma == 0 {
        return Err(Error::DependentTransversal(s.to_string()));
    }
    let y = x
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let w = m.mul(v, sigma);
            if s.contains(i + 1) {
                m.neg(w)
            } else {
                w
            }
        })
        .collect();
    Ok(Diagonal { modulus: m, x: y })
}

/// [`swap`] computed through the matrix: change basis, then re-standardize.
pub fn swap_via_matrix(x: &Diagonal, s: IndexSet) -> Result<Diagonal> {
    check_range(x, s)?;
    if x.n() < 2 {
        return Err(Error::TooSmall(x.n()));
    }
    change_basis_standardize(&standard_matrix(x), s)?.diagonal()
}

/// A weakly equivalent diagonal whose first entry is `-1`.
pub fn normalize(x: &Diagonal) -> Result<Diagonal> {
    let sig = signature(x)?;
    let i = sig.lex_least().ok_or(Error::NoCircuitHyperplane)?;
    let first = i.min().expect("signature members are nonempty");
    let mut perm: Vec<usize> = (0..x.n()).collect();
    perm.swap(0, first - 1);
    swap(&x.permute(&perm), i.without(first))
}

fn orbit_cap(n: usize) -> Result<()> {
    if n > MAX_ORBIT_N {
        return Err(Error::TooLarge(format!("orbit enumeration needs n <= {MAX_ORBIT_N}, got {n}")));
    }
    Ok(())
}

/// Distinct sorted diagonals reachable by one swap; permutations add nothing
/// beyond sorting since the least rearrangement of a vector is its sorted form.
fn sorted_swap_images(x: &Diagonal) -> BTreeSet<Diagonal> {
    (0..1u32 << x.n())
        .filter_map(|b| swap(x, IndexSet::from_bits(b)).ok())
        .map(|y| y.sorted())
        .collect()
}

/// Least diagonal over all valid swaps and coordinate permutations.
pub fn canonical_form(x: &Diagonal) -> Result<Diagonal> {
    orbit_cap(x.n())?;
    Ok(sorted_swap_images(x).into_iter().next().expect("the empty swap is always valid"))
}

pub fn weakly_equivalent(x: &Diagonal, y: &Diagonal) -> Result<bool> {
    if x.modulus() != y.modulus() || x.n() != y.n() {
        return Err(Error::MismatchedShape(format!("{x} vs {y}")));
    }
    Ok(canonical_form(x)? == canonical_form(y)?)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn distinct_permutations(x: &Diagonal) -> u64 {
    let mut counts = std::collections::BTreeMap::new();
    for &v in x.values() {
        *counts.entry(v).or_insert(0usize) += 1;
    }
    counts.values().fold(factorial(x.n()), |acc, &c| acc / factorial(c))
}

/// Size of the weak-equivalence class of `x` among all labelled diagonals.
pub fn orbit_size(x: &Diagonal) -> Result<u64> {
    orbit_cap(x.n())?;
    Ok(sorted_swap_images(x).iter().map(distinct_permutations).sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpikeClass {
    pub diagonal: Diagonal,
    pub orbit_size: u64,
    pub signature_size: usize,
}

/// Every non-decreasing tuple over `[1, p)` of length `n`, in increasing order.
pub(crate) fn sorted_tuples(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![1u32; n];
    if n == 0 || p < 2 {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..n).rev().find(|&i| cur[i] < p - 1) else {
            break;
        };
        let v = cur[pos] + 1;
        for c in &mut cur[pos..] {
            *c = v;
        }
    }
    out
}

/// One canonical representative per weak-equivalence class, in increasing order.
pub fn enumerate_spikes(p: u64, n: usize) -> Result<Vec<SpikeClass>> {
    orbit_cap(n)?;
    if p > MAX_ENUMERATE_P as u64 {
        return Err(Error::TooLarge(format!("enumeration needs p <= {MAX_ENUMERATE_P}, got {p}")));
    }
    let m = make_field(p)?;
    let mut classes = Vec::new();
    for t in sorted_tuples(m.get(), n) {
        let x = Diagonal { modulus: m, x: t };
        let images = sorted_swap_images(&x);
        if images.iter().next() == Some(&x) {
            let orbit_size = images.iter().map(distinct_permutations).sum();
            let signature_size = signature(&x)?.len();
            classes.push(SpikeClass { diagonal: x, orbit_size, signature_size });
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagonal {
        s.parse().unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::from_indices(v.iter().copied())
    }

    #[test]
    fn parse_and_display() {
        let x = d("p=3;x=2,2,1,1");
        assert_eq!(x.to_string(), "p=3;x=2,2,1,1");
        assert_eq!(x.balanced(), vec![-1, -1, 1, 1]);
        assert!(matches!("p=4;x=1".parse::<Diagonal>(), Err(Error::CompositeModulus(4))));
        assert!(matches!("p=3;x=0,1".parse::<Diagonal>(), Err(Error::ZeroEntry(1))));
        assert!(matches!("p=3;x=-1".parse::<Diagonal>(), Err(Error::Parse(_))));
        assert!(matches!("p=3;x=4".parse::<Diagonal>(), Err(Error::Parse(_))));
        assert!(matches!("x=1;p=3".parse::<Diagonal>(), Err(Error::Parse(_))));
    }

    #[test]
    fn build_rep_examples() {
        let rep = build_rep(&d("p=3;x=2,2,2")).unwrap();
        assert!(rep.has_standard_pattern());
        assert_eq!(rep.matrix().raw(0, 4), 0);
        assert_eq!(rep.matrix().cols(), 7);
        let rep5 = build_rep(&d("p=5;x=1,1,1,1")).unwrap();
        assert!((0..4).all(|i| rep5.matrix().raw(i, 5 + i) == 2));
        assert_eq!(build_rep(&d("p=3;x=2,2")), Err(Error::TooSmall(2)));
        assert_eq!(rep.diagonal().unwrap(), d("p=3;x=2,2,2"));
    }

    #[test]
    fn axioms_examples() {
        assert!(build_rep(&d("p=3;x=2,2,2")).unwrap().check_axioms());
        assert!(build_rep(&d("p=3;x=2,2,2,1")).unwrap().check_axioms());
        let rep = build_rep(&d("p=5;x=1,2,3")).unwrap();
        let mut a = rep.matrix().clone();
        let tip = a.column(3);
        a.set_column(4, &tip);
        let r = axiom_report(&a);
        assert!(!r.three_point_lines);
        assert!(!check_axioms(&a));
    }

    #[test]
    fn signature_examples() {
        let s = signature(&d("p=3;x=2,2,2")).unwrap();
        assert_eq!(s.members(), vec![set(&[1]), set(&[2]), set(&[3])]);
        let s = signature(&d("p=3;x=1,1,1")).unwrap();
        assert_eq!(s.members(), vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
        let s = signature(&d("p=3;x=2,2,1,1")).unwrap();
        let mut got = s.members();
        got.sort_by(|a, b| a.lex_cmp(*b));
        assert_eq!(
            got,
            vec![set(&[1]), set(&[1, 2, 3]), set(&[1, 2, 4]), set(&[2]), set(&[3, 4])]
        );
        assert_eq!(s.to_hex(), "1886");
        let big = Diagonal::new(make_field(3).unwrap(), vec![1; 25]).unwrap();
        assert!(matches!(signature(&big), Err(Error::TooLarge(_))));
    }

    #[test]
    fn dependent_transversal_examples() {
        let x = d("p=3;x=1,1,1");
        assert!(!is_dependent_transversal(&x, IndexSet::EMPTY));
        assert!(is_dependent_transversal(&x, set(&[1, 2])));
        assert!(!is_dependent_transversal(&x, set(&[1])));
    }

    #[test]
    fn circuit_hyperplane_examples() {
        let x = d("p=3;x=2,2,2");
        let c = circuit_hyperplane(&x, set(&[1])).unwrap();
        let want: BTreeSet<Element> = [Element::F(1), Element::E(2), Element::E(3)].into();
        assert_eq!(c, want);
        assert!(matches!(circuit_hyperplane(&x, set(&[1, 2])), Err(Error::NotInSignature(_))));
        let y = d("p=3;x=2,2,1,1");
        let c = circuit_hyperplane(&y, set(&[3, 4])).unwrap();
        let want: BTreeSet<Element> =
            [Element::E(1), Element::E(2), Element::F(3), Element::F(4)].into();
        assert_eq!(c, want);
        let rep = build_rep(&y).unwrap();
        let cols: Vec<usize> = c.iter().map(|&e| standard_column(4, e)).collect();
        assert_eq!(rep.matrix().column_rank(&cols), 3);
    }

    #[test]
    fn swap_examples() {
        let x = d("p=3;x=1,1,1");
        assert_eq!(swap(&x, IndexSet::EMPTY).unwrap(), x);
        assert_eq!(swap(&x, set(&[1])).unwrap(), d("p=3;x=1,2,2"));
        assert_eq!(swap_via_matrix(&x, set(&[1])).unwrap(), d("p=3;x=1,2,2"));
        let y = d("p=3;x=2,2,2");
        assert!(matches!(swap(&y, set(&[1])), Err(Error::DependentTransversal(_))));
        assert!(matches!(swap_via_matrix(&y, set(&[1])), Err(Error::DependentTransversal(_))));
        assert!(matches!(swap(&y, set(&[4])), Err(Error::MismatchedShape(_))));
    }

    #[test]
    fn change_basis_examples() {
        let rep = build_rep(&d("p=3;x=1,1,1")).unwrap();
        assert_eq!(change_basis_standardize(&rep, IndexSet::EMPTY).unwrap(), rep);
        let once = change_basis_standardize(&rep, set(&[1])).unwrap();
        assert_eq!(once.diagonal().unwrap(), d("p=3;x=1,2,2"));
        assert_eq!(once.labels()[0], Element::F(1));
        assert_eq!(once.labels()[4], Element::E(1));
        let twice = change_basis_standardize(&once, set(&[1])).unwrap();
        assert_eq!(twice, rep);
        let dep = build_rep(&d("p=3;x=2,2,2")).unwrap();
        assert!(matches!(
            change_basis_standardize(&dep, set(&[1])),
            Err(Error::DependentTransversal(_))
        ));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&d("p=3;x=2,2,2")).unwrap(), d("p=3;x=2,2,2"));
        assert_eq!(normalize(&d("p=3;x=1,1,1")).unwrap(), d("p=3;x=2,1,2"));
        assert_eq!(normalize(&d("p=3;x=1,1")).unwrap(), d("p=3;x=2,1"));
        // inverses 1,1 in GF(5) only reach sums 1 and 2, never -1
        assert_eq!(normalize(&d("p=5;x=1,1")), Err(Error::NoCircuitHyperplane));
    }

    #[test]
    fn canonical_and_weak_equivalence() {
        let a = d("p=3;x=1,1,1");
        let b = d("p=3;x=2,1,2");
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert!(weakly_equivalent(&a, &b).unwrap());
        assert!(weakly_equivalent(&a, &a).unwrap());
        // swapping every basis element maps (2,2,2) onto (1,1,1)
        let all = set(&[1, 2, 3]);
        assert_eq!(swap_via_matrix(&d("p=3;x=2,2,2"), all).unwrap(), a);
        assert!(weakly_equivalent(&d("p=3;x=2,2,2"), &a).unwrap());
        assert!(!weakly_equivalent(&d("p=5;x=1,1,1"), &d("p=5;x=4,4,4")).unwrap());
        assert!(matches!(
            weakly_equivalent(&a, &d("p=3;x=1,1,1,1")),
            Err(Error::MismatchedShape(_))
        ));
        for n in 1..=6 {
            let x = Diagonal::new(make_field(2).unwrap(), vec![1; n]).unwrap();
            assert_eq!(canonical_form(&x).unwrap(), x);
        }
        let big = Diagonal::new(make_field(3).unwrap(), vec![1; 8]).unwrap();
        assert!(matches!(canonical_form(&big), Err(Error::TooLarge(_))));
    }

    #[test]
    fn enumerate_examples() {
        let c = enumerate_spikes(2, 4).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].orbit_size, 1);
        let c = enumerate_spikes(3, 5).unwrap();
        assert_eq!(c.iter().map(|k| k.orbit_size).sum::<u64>(), 32);
        assert!(matches!(enumerate_spikes(17, 3), Err(Error::TooLarge(_))));
        assert!(matches!(enumerate_spikes(3, 8), Err(Error::TooLarge(_))));
    }

    #[test]
    fn sorted_tuple_count() {
        // C(p-2+n, n) multisets
        assert_eq!(sorted_tuples(13, 7).len(), 31824);
        assert_eq!(sorted_tuples(3, 4).len(), 5);
    }
}
