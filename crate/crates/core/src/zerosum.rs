//! Subset sums over GF(p).
//!
//! Any `p - 1` nonzero residues reach every nonzero target with some nonempty
//! subset, and any `p` residues have a nonempty zero-sum subset. The solvers
//! here return the lexicographically least witness, and the verifiers sweep
//! every tuple of a given length to confirm both facts exhaustively.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{make_field, FieldElem, PrimeModulus};
use crate::subset::IndexSet;

/// Elementary-step budget for the exhaustive verifiers.
pub const VERIFY_BUDGET: u64 = 1_000_000_000;

/// Largest tuple length the solvers accept (witnesses are 32-bit sets).
pub const MAX_LEN: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumInstance {
    modulus: PrimeModulus,
    a: Vec<u32>,
    target: Option<u32>,
}

impl ZeroSumInstance {
    /// Nonzero `a` with a nonzero target `k`.
    pub fn with_target(a: &[FieldElem], k: FieldElem) -> Result<Self> {
        let modulus = k.modulus();
        let a = residues(modulus, a)?;
        if let Some(i) = a.iter().position(|&v| v == 0) {
            return Err(Error::ZeroEntry(i + 1));
        }
        if k.is_zero() {
            return Err(Error::InvalidInstance("target must be nonzero".into()));
        }
        Ok(ZeroSumInstance { modulus, a, target: Some(k.value()) })
    }

    /// Arbitrary `a`, target zero.
    pub fn zero_target(modulus: PrimeModulus, a: &[FieldElem]) -> Result<Self> {
        let a = residues(modulus, a)?;
        Ok(ZeroSumInstance { modulus, a, target: None })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn values(&self) -> &[u32] {
        &self.a
    }

    pub fn target(&self) -> u32 {
        self.target.unwrap_or(0)
    }
}

fn residues(modulus: PrimeModulus, a: &[FieldElem]) -> Result<Vec<u32>> {
    if a.len() > MAX_LEN {
        return Err(Error::TooLarge(format!("at most {MAX_LEN} values, got {}", a.len())));
    }
    a.iter()
        .map(|e| {
            if e.modulus() == modulus {
                Ok(e.value())
            } else {
                Err(Error::MismatchedShape("values from different fields".into()))
            }
        })
        .collect()
}

/// Sums reachable from each suffix of the value list, as bitsets over `[0, p)`.
struct SuffixReach {
    modulus: PrimeModulus,
    words: usize,
    /// `reach[j]` covers subsets of `a[j..]`, empty subset included.
    reach: Vec<Vec<u64>>,
}

impl SuffixReach {
    fn new(modulus: PrimeModulus, a: &[u32]) -> Self {
        let p = modulus.get() as usize;
        let words = p.div_ceil(64);
        let mut reach = vec![vec![0u64; words]; a.len() + 1];
        reach[a.len()][0] = 1;
        for j in (0..a.len()).rev() {
            let (head, tail) = reach.split_at_mut(j + 1);
            let next = &tail[0];
            let cur = &mut head[j];
            cur.copy_from_slice(next);
            for s in ones(next) {
                let t = modulus.add(s as u32, a[j]) as usize;
                cur[t / 64] |= 1 << (t % 64);
            }
        }
        SuffixReach { modulus, words, reach }
    }

    fn has(&self, j: usize, s: u32) -> bool {
        let s = s as usize;
        debug_assert!(s / 64 < self.words);
        self.reach[j][s / 64] >> (s % 64) & 1 == 1
    }

    /// Lexicographically least nonempty subset summing to `k`.
    fn least_witness(&self, a: &[u32], k: u32) -> Option<IndexSet> {
        let m = self.modulus;
        let mut chosen = IndexSet::EMPTY;
        let mut sum = 0u32;
        let mut start = 0;
        loop {
            if !chosen.is_empty() && sum == k {
                return Some(chosen);
            }
            let need = m.sub(k, sum);
            let j = (start..a.len()).find(|&j| self.has(j + 1, m.sub(need, a[j])))?;
            chosen = chosen.with(j + 1);
            sum = m.add(sum, a[j]);
            start = j + 1;
        }
    }
}

fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + b)
        })
    })
}

fn checked_sum(m: PrimeModulus, a: &[u32], s: IndexSet) -> u32 {
    s.iter().fold(0, |acc, i| m.add(acc, a[i - 1]))
}

fn solve(inst: &ZeroSumInstance) -> Result<IndexSet> {
    let k = inst.target();
    let table = SuffixReach::new(inst.modulus, &inst.a);
    let w = table.least_witness(&inst.a, k).ok_or(Error::NoWitness)?;
    assert_eq!(checked_sum(inst.modulus, &inst.a, w), k, "witness fails its sum equation");
    Ok(w)
}

/// Least nonempty `I` with `sum_{i in I} a_i = k`, for nonzero values and target.
pub fn subset_with_sum(inst: &ZeroSumInstance) -> Result<IndexSet> {
    if inst.target.is_none() {
        return Err(Error::InvalidInstance("instance has no nonzero target".into()));
    }
    solve(inst)
}

/// Least nonempty `I` with `sum_{i in I} a_i = 0`.
pub fn zero_sum_subset(inst: &ZeroSumInstance) -> Result<IndexSet> {
    if inst.target.is_some() {
        return Err(Error::InvalidInstance("instance has a nonzero target".into()));
    }
    solve(inst)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaFailure {
    pub a: Vec<u32>,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub p: u32,
    pub n: usize,
    pub checked: u64,
    pub failures: Vec<LemmaFailure>,
    pub ms: u64,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Number of failures kept in a report; the count in `checked` is unaffected.
const MAX_REPORTED_FAILURES: usize = 64;

fn decode_tuple(mut idx: u64, n: usize, base: u64, offset: u32) -> Vec<u32> {
    let mut t = vec![0u32; n];
    for slot in t.iter_mut().rev() {
        *slot = (idx % base) as u32 + offset;
        idx /= base;
    }
    t
}

fn sweep(
    name: &str,
    m: PrimeModulus,
    n: usize,
    base: u64,
    offset: u32,
    targets: &[u32],
) -> LemmaReport {
    let start = Instant::now();
    let tuples = base.pow(n as u32);
    let mut failures: Vec<LemmaFailure> = (0..tuples)
        .into_par_iter()
        .flat_map_iter(|idx| {
            let a = decode_tuple(idx, n, base, offset);
            let table = SuffixReach::new(m, &a);
            let mut bad = Vec::new();
            for &k in targets {
                let ok = table
                    .least_witness(&a, k)
                    .is_some_and(|w| checked_sum(m, &a, w) == k);
                if !ok {
                    bad.push(LemmaFailure { a: a.clone(), k });
                }
            }
            bad
        })
        .collect();
    failures.truncate(MAX_REPORTED_FAILURES);
    LemmaReport {
        lemma: name.to_string(),
        p: m.get(),
        n,
        checked: tuples * targets.len() as u64,
        failures,
        ms: start.elapsed().as_millis() as u64,
    }
}

fn budget_check(steps: Option<u64>) -> Result<()> {
    match steps {
        Some(s) if s <= VERIFY_BUDGET => Ok(()),
        _ => Err(Error::BudgetExceeded { budget: VERIFY_BUDGET }),
    }
}

/// Every tuple of `n` nonzero residues reaches every nonzero target.
pub fn verify_lemma_2_1(p: u64, n: usize) -> Result<LemmaReport> {
    let m = make_field(p)?;
    if n + 1 < p as usize {
        return Err(Error::InvalidInstance(format!("need n >= p - 1, got n = {n}, p = {p}")));
    }
    if n > MAX_LEN {
        return Err(Error::TooLarge(format!("n = {n}")));
    }
    budget_check((p - 1).checked_pow(n as u32).and_then(|t| t.checked_mul(p - 1)))?;
    let targets: Vec<u32> = (1..m.get()).collect();
    Ok(sweep("lemma21", m, n, p - 1, 1, &targets))
}

/// Every tuple of `n` residues has a nonempty zero-sum subset.
pub fn verify_lemma_2_2(p: u64, n: usize) -> Result<LemmaReport> {
    let m = make_field(p)?;
    if n < p as usize {
        return Err(Error::InvalidInstance(format!("need n >= p, got n = {n}, p = {p}")));
    }
    if n > MAX_LEN {
        return Err(Error::TooLarge(format!("n = {n}")));
    }
    budget_check(p.checked_pow(n as u32))?;
    Ok(sweep("lemma22", m, n, p, 0, &[0]))
}
