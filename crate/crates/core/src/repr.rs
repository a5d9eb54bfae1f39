//! Representability of a labelled spike signature over other prime fields.
//!
//! Two routes decide whether the circuit-hyperplane structure of a GF(p)
//! diagonal reappears over GF(q):
//!
//! * [`find_rep_over`] searches inverse vectors over GF(q) depth first, testing
//!   each subset constraint as soon as its last coordinate is fixed;
//! * [`propagate_facts`] derives integer identities `sum_{i in I} 1/x_i = c`
//!   that hold in every representing field. When every singleton is pinned the
//!   admissible characteristics follow from integer arithmetic alone
//!   ([`Certificate`]).
//!
//! The two are independent and [`characteristic_set`] reports whether they agree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{is_prime, make_field, PrimeModulus};
use crate::spike::{enumerate_spikes, signature, signature_of_inverses, Diagonal, Signature};
use crate::subset::{IndexSet, SetFamily};

/// Default node budget for [`find_rep_over`].
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const MAX_SEARCH_N: usize = 12;
pub const MAX_FACT_N: usize = 16;
pub const MAX_CHARSET_PRIME: u64 = 97;
/// Step budget for [`uniqueness_audit`], counted as diagonals times subsets.
pub const AUDIT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<Diagonal>,
    pub nodes: u64,
}

struct Search<'a> {
    field: PrimeModulus,
    sig: &'a SetFamily,
    n: usize,
    budget: u64,
    nodes: u64,
    /// Inverse residues in the order of increasing diagonal entry.
    order: Vec<u32>,
    /// Subset sums of the assigned prefix; level `k` uses `[0, 2^k)`.
    sums: Vec<u32>,
    z: Vec<u32>,
    forbidden: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, k: usize) -> Result<bool> {
        if k == self.n {
            return Ok(true);
        }
        let m = self.field;
        let minus_one = m.neg(1);
        let width = 1usize << k;
        // required value from members with max element k+1, forbidden values from non-members
        let mut required: Option<u32> = None;
        let mut consistent = true;
        self.forbidden.iter_mut().for_each(|f| *f = false);
        for t in 0..width {
            let v = m.sub(minus_one, self.sums[t]);
            if self.sig.contains(IndexSet::from_bits((t | width) as u32)) {
                match required {
                    None => required = Some(v),
                    Some(r) if r != v => consistent = false,
                    _ => {}
                }
            } else {
                self.forbidden[v as usize] = true;
            }
        }
        if !consistent {
            return Ok(false);
        }
        let candidates: Vec<u32> = match required {
            Some(0) => Vec::new(),
            Some(v) => vec![v],
            None => self.order.clone(),
        }
        .into_iter()
        .filter(|&z| !self.forbidden[z as usize])
        .collect();
        for z in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            for t in 0..width {
                self.sums[width + t] = m.add(self.sums[t], z);
            }
            self.z[k] = z;
            if self.run(k + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// A diagonal over GF(q) with exactly the signature `sig`, or `None` once the
/// search space is exhausted. The first witness in increasing diagonal order wins.
pub fn find_rep_over(sig: &Signature, q: u64, budget: u64) -> Result<SearchOutcome> {
    let field = make_field(q)?;
    let n = sig.n();
    if n > MAX_SEARCH_N {
        return Err(Error::TooLarge(format!("search needs n <= {MAX_SEARCH_N}, got {n}")));
    }
    if n == 0 || sig.contains(IndexSet::EMPTY) {
        return Ok(SearchOutcome { witness: None, nodes: 0 });
    }
    let order = (1..field.get()).map(|y| field.inv(y).expect("unit")).collect();
    let mut s = Search {
        field,
        sig: sig.family(),
        n,
        budget,
        nodes: 0,
        order,
        sums: vec![0; 1 << n],
        z: vec![0; n],
        forbidden: vec![false; field.get() as usize],
    };
    let found = s.run(0)?;
    let witness = if found {
        let y = s.z.iter().map(|&z| field.inv(z).expect("unit")).collect();
        let w = Diagonal::new(field, y)?;
        assert_eq!(&signature(&w)?, sig, "search witness has the wrong signature");
        Some(w)
    } else {
        None
    };
    Ok(SearchOutcome { witness, nodes: s.nodes })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub signature: String,
    pub diagonals: Vec<Diagonal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub p: u32,
    pub n: usize,
    pub diagonals: u64,
    pub distinct_signatures: u64,
    /// Diagonals whose signature was already taken by a smaller diagonal.
    pub collisions: u64,
    /// First colliding groups, in increasing order of their least diagonal.
    pub examples: Vec<Collision>,
    pub elapsed_ms: u64,
}

const MAX_COLLISION_EXAMPLES: usize = 16;

fn nth_diagonal(m: PrimeModulus, n: usize, mut idx: u64) -> Vec<u32> {
    let base = m.get() as u64 - 1;
    let mut x = vec![0; n];
    for slot in x.iter_mut().rev() {
        *slot = (idx % base) as u32 + 1;
        idx /= base;
    }
    x
}

/// Signatures of every diagonal in `(GF(p)*)^n`, with all collisions.
pub fn uniqueness_audit(p: u64, n: usize) -> Result<UniquenessReport> {
    let start = Instant::now();
    let m = make_field(p)?;
    if n == 0 || n > MAX_SEARCH_N + 4 {
        return Err(Error::TooLarge(format!("n = {n}")));
    }
    let count = (p - 1).checked_pow(n as u32);
    match count.and_then(|c| c.checked_mul(1 << n)) {
        Some(steps) if steps <= AUDIT_BUDGET => {}
        _ => return Err(Error::BudgetExceeded { budget: AUDIT_BUDGET }),
    }
    let count = count.expect("checked above");
    let mut keyed: Vec<(Signature, u64)> = (0..count)
        .into_par_iter()
        .map(|idx| {
            let x = nth_diagonal(m, n, idx);
            let z: Vec<u32> = x.iter().map(|&v| m.inv(v).expect("unit")).collect();
            (signature_of_inverses(m, &z), idx)
        })
        .collect();
    keyed.par_sort_unstable_by(|a, b| a.0.words().cmp(b.0.words()).then(a.1.cmp(&b.1)));

    let mut distinct = 0u64;
    let mut groups: Vec<Collision> = Vec::new();
    let mut i = 0;
    while i < keyed.len() {
        let mut j = i + 1;
        while j < keyed.len() && keyed[j].0 == keyed[i].0 {
            j += 1;
        }
        distinct += 1;
        if j - i > 1 {
            groups.push(Collision {
                signature: keyed[i].0.to_hex(),
                diagonals: keyed[i..j]
                    .iter()
                    .map(|(_, idx)| Diagonal::new(m, nth_diagonal(m, n, *idx)).expect("nonzero"))
                    .collect(),
            });
        }
        i = j;
    }
    groups.sort_by(|a, b| a.diagonals[0].cmp(&b.diagonals[0]));
    groups.truncate(MAX_COLLISION_EXAMPLES);
    Ok(UniquenessReport {
        p: m.get(),
        n,
        diagonals: count,
        distinct_signatures: distinct,
        collisions: count - distinct,
        examples: groups,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// `sum_{i in set} 1/x_i = value` in every field representing the signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinearFact {
    pub set: IndexSet,
    pub value: i64,
}

/// Saturated facts, indexed by set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactSet {
    n: usize,
    by_set: BTreeMap<u32, BTreeSet<i64>>,
}

impl FactSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.by_set.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_set.is_empty()
    }

    pub fn values(&self, s: IndexSet) -> Vec<i64> {
        self.by_set.get(&s.bits()).map(|v| v.iter().copied().collect()).unwrap_or_default()
    }

    pub fn contains(&self, f: LinearFact) -> bool {
        self.by_set.get(&f.set.bits()).is_some_and(|v| v.contains(&f.value))
    }

    /// Facts ordered by set bit pattern, then value.
    pub fn facts(&self) -> Vec<LinearFact> {
        self.by_set
            .iter()
            .flat_map(|(&b, vs)| vs.iter().map(move |&v| LinearFact { set: IndexSet::from_bits(b), value: v }))
            .collect()
    }

    /// The value pinned on each singleton, preferring the smallest magnitude.
    pub fn singleton_values(&self) -> Option<Vec<i64>> {
        (1..=self.n)
            .map(|i| {
                self.by_set
                    .get(&IndexSet::from_indices([i]).bits())
                    .and_then(|vs| vs.iter().copied().min_by_key(|&v| (v.abs(), v)))
            })
            .collect()
    }
}

fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut s = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = s;
        if s == 0 {
            done = true;
        } else {
            s = (s - 1) & mask;
        }
        Some(cur)
    })
}

/// Closes the signature's facts under disjoint union and nested difference.
pub fn propagate_facts(sig: &Signature, p: u64) -> Result<FactSet> {
    let n = sig.n();
    if n > MAX_FACT_N {
        return Err(Error::TooLarge(format!("propagation needs n <= {MAX_FACT_N}, got {n}")));
    }
    let bound = (p * (p - 1) / 2) as i64;
    let full = IndexSet::full(n).bits();
    let mut table: HashMap<u32, BTreeSet<i64>> = HashMap::new();
    let mut work: Vec<(u32, i64)> = Vec::new();

    fn add(
        table: &mut HashMap<u32, BTreeSet<i64>>,
        work: &mut Vec<(u32, i64)>,
        bound: i64,
        s: u32,
        c: i64,
    ) {
        if s != 0 && c.abs() <= bound && table.entry(s).or_default().insert(c) {
            work.push((s, c));
        }
    }

    for s in sig.members() {
        add(&mut table, &mut work, bound, s.bits(), -1);
    }
    while let Some((s, c)) = work.pop() {
        let comp = full & !s;
        let mut found: Vec<(u32, i64)> = Vec::new();
        let known: Vec<u32> = table.keys().copied().collect();
        let scan_list = known.len() < (1usize << comp.count_ones()) + (1usize << s.count_ones());
        let mut visit = |t: u32| {
            if t == 0 || t == s {
                return;
            }
            let Some(vals) = table.get(&t) else { return };
            for &d in vals {
                if t & s == 0 {
                    found.push((s | t, c + d));
                }
                if t & s == s {
                    found.push((t & !s, d - c));
                }
                if t & s == t {
                    found.push((s & !t, c - d));
                }
            }
        };
        if scan_list {
            known.iter().for_each(|&t| visit(t));
        } else {
            submasks(comp).for_each(&mut visit);
            submasks(comp).for_each(|u| visit(u | s));
            submasks(s).for_each(&mut visit);
        }
        for (t, v) in found {
            add(&mut table, &mut work, bound, t, v);
        }
    }
    Ok(FactSet { n, by_set: table.into_iter().collect() })
}

/// Set of primes satisfying a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Admissible {
    /// Exactly these primes.
    Finite { primes: Vec<u64> },
    /// Every prime except these.
    Cofinite { excluded: Vec<u64> },
}

impl Admissible {
    pub fn contains(&self, q: u64) -> bool {
        match self {
            Admissible::Finite { primes } => primes.contains(&q),
            Admissible::Cofinite { excluded } => is_prime(q) && !excluded.contains(&q),
        }
    }
}

/// Exact characteristic set of a labelled signature whose singletons are all pinned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Integer value forced on each `1/x_i`.
    pub pinned_inverses: Vec<i64>,
    /// gcd of `sum_{i in I} m_i + 1` over signature members.
    pub gcd: u64,
    pub admissible: Admissible,
    /// The pinned values live in the prime subfield, so the verdict covers every
    /// field of a given characteristic, not just GF(q).
    pub all_characteristics: bool,
}

impl Certificate {
    /// Direct check: `q` is admissible iff no `m_i` vanishes mod `q` and, for every
    /// nonempty `I`, `q` divides `sum_{i in I} m_i + 1` exactly when `I` is a member.
    pub fn admits_by_enumeration(&self, sig: &Signature, q: u64) -> bool {
        let q = q as i64;
        if self.pinned_inverses.iter().any(|m| m.rem_euclid(q) == 0) {
            return false;
        }
        let n = self.pinned_inverses.len();
        (1u32..1 << n).all(|b| {
            let s = IndexSet::from_bits(b);
            let v: i64 = s.iter().map(|i| self.pinned_inverses[i - 1]).sum::<i64>() + 1;
            (v.rem_euclid(q) == 0) == sig.contains(s)
        })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Builds the certificate when every singleton carries a fact.
pub fn certificate(sig: &Signature, facts: &FactSet) -> Option<Certificate> {
    let m = facts.singleton_values()?;
    let n = m.len();
    let mut g = 0u64;
    let mut negatives: Vec<i64> = m.clone();
    for b in 1u32..1 << n {
        let s = IndexSet::from_bits(b);
        let v: i64 = s.iter().map(|i| m[i - 1]).sum::<i64>() + 1;
        if sig.contains(s) {
            g = gcd(g, v.unsigned_abs());
        } else {
            negatives.push(v);
        }
    }
    let blocked = |q: u64| negatives.iter().any(|&v| v.rem_euclid(q as i64) == 0);
    let admissible = if g != 0 {
        Admissible::Finite { primes: prime_factors(g).into_iter().filter(|&q| !blocked(q)).collect() }
    } else if negatives.contains(&0) {
        Admissible::Finite { primes: Vec::new() }
    } else {
        let excluded: BTreeSet<u64> =
            negatives.iter().flat_map(|v| prime_factors(v.unsigned_abs())).collect();
        Admissible::Cofinite { excluded: excluded.into_iter().collect() }
    };
    Some(Certificate { pinned_inverses: m, gcd: g, admissible, all_characteristics: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Representable {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "exhaustive-search")]
    ExhaustiveSearch,
    #[serde(rename = "certificate")]
    Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharVerdict {
    pub q: u64,
    pub representable: Representable,
    pub witness: Option<Diagonal>,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharReport {
    pub command: String,
    pub p: u32,
    pub n: usize,
    pub primes: Vec<u64>,
    pub verdicts: Vec<CharVerdict>,
    pub certificate: Option<Certificate>,
    /// Certificate and search verdicts agree on every prime both decided.
    pub agreement: bool,
    pub elapsed_ms: u64,
    pub nodes_visited: u64,
}

impl CharReport {
    pub fn yes_primes(&self) -> Vec<u64> {
        self.verdicts
            .iter()
            .filter(|v| v.representable == Representable::Yes)
            .map(|v| v.q)
            .collect()
    }
}

/// Search verdict for each prime, with the certificate when propagation pins
/// every singleton.
pub fn characteristic_set(x: &Diagonal, primes: &[u64], budget: u64) -> Result<CharReport> {
    let start = Instant::now();
    if x.n() > MAX_SEARCH_N {
        return Err(Error::TooLarge(format!("n = {}", x.n())));
    }
    for &q in primes {
        if q > MAX_CHARSET_PRIME {
            return Err(Error::TooLarge(format!("prime {q} exceeds {MAX_CHARSET_PRIME}")));
        }
        make_field(q)?;
    }
    let sig = signature(x)?;
    let facts = propagate_facts(&sig, x.p() as u64)?;
    let cert = certificate(&sig, &facts);
    let mut verdicts = Vec::with_capacity(primes.len());
    let mut nodes = 0;
    let mut agreement = true;
    for &q in primes {
        let verdict = match find_rep_over(&sig, q, budget) {
            Ok(out) => {
                nodes += out.nodes;
                let representable =
                    if out.witness.is_some() { Representable::Yes } else { Representable::No };
                if let Some(c) = &cert {
                    agreement &= c.admissible.contains(q) == (representable == Representable::Yes);
                }
                CharVerdict { q, representable, witness: out.witness, method: Method::ExhaustiveSearch }
            }
            Err(Error::BudgetExceeded { .. }) => {
                nodes += budget;
                match &cert {
                    Some(c) => {
                        let yes = c.admissible.contains(q);
                        let witness = if yes {
                            let f = make_field(q)?;
                            Some(Diagonal::from_inverses(f, &c.pinned_inverses)?)
                        } else {
                            None
                        };
                        CharVerdict {
                            q,
                            representable: if yes { Representable::Yes } else { Representable::No },
                            witness,
                            method: Method::Certificate,
                        }
                    }
                    None => CharVerdict {
                        q,
                        representable: Representable::Unknown,
                        witness: None,
                        method: Method::ExhaustiveSearch,
                    },
                }
            }
            Err(e) => return Err(e),
        };
        verdicts.push(verdict);
    }
    Ok(CharReport {
        command: "charset".into(),
        p: x.p(),
        n: x.n(),
        primes: primes.to_vec(),
        verdicts,
        certificate: cert,
        agreement,
        elapsed_ms: start.elapsed().as_millis() as u64,
        nodes_visited: nodes,
    })
}

/// Integer entries of the sharpness construction: `p` copies of -1, then `p - 2` ones.
pub fn prop41_integers(p: u64) -> Result<Vec<i64>> {
    make_field(p)?;
    if p < 3 {
        return Err(Error::InvalidInstance("construction needs an odd prime".into()));
    }
    let p = p as usize;
    Ok(std::iter::repeat_n(-1, p).chain(std::iter::repeat_n(1, p - 2)).collect())
}

/// The `n = 2p - 2` diagonal representable over every prime field of order at least `p`.
pub fn construct_prop41(p: u64) -> Result<Diagonal> {
    let xs = prop41_integers(p)?;
    Diagonal::from_integers(make_field(p)?, &xs)
}

/// Integer special standard matrix `[I | 1 | 1 + diag(x)]` for integer entries.
pub fn integer_spike_matrix(xs: &[i64]) -> Vec<Vec<i64>> {
    let n = xs.len();
    (0..n)
        .map(|r| {
            let mut row = vec![0i64; 2 * n + 1];
            row[r] = 1;
            row[n] = 1;
            for (j, &x) in xs.iter().enumerate() {
                row[n + 1 + j] = if r == j { 1 + x } else { 1 };
            }
            row
        })
        .collect()
}

/// Integer inverse entries of the characteristic-restricting construction:
/// `-1`, then `-2^(i-1), 2^(i-1)` for `i = 1..=k`, then `-2^k`, with `k = floor(log2 p)`.
pub fn prop43_inverses(p: u64) -> Result<Vec<i64>> {
    make_field(p)?;
    if p < 3 {
        return Err(Error::InvalidInstance("construction needs an odd prime".into()));
    }
    let k = 63 - p.leading_zeros();
    let mut inv = vec![-1i64];
    for i in 1..=k {
        let t = 1i64 << (i - 1);
        inv.push(-t);
        inv.push(t);
    }
    inv.push(-(1i64 << k));
    Ok(inv)
}

/// The `n = 2 floor(log2 p) + 2` diagonal representable only in characteristic `p`.
pub fn construct_prop43(p: u64) -> Result<Diagonal> {
    let inv = prop43_inverses(p)?;
    Diagonal::from_inverses(make_field(p)?, &inv)
}

/// `floor(log2(p + 2)) + 1` and `floor(log2(p + 2)) + floor(log2(4(p + 2)/3))`.
pub fn l_interval(p: u64) -> (u64, u64) {
    let a = 63 - (p + 2).leading_zeros() as u64;
    // largest k with 3 * 2^k <= 4 (p + 2)
    let mut k = 0;
    while 3u64 << (k + 1) <= 4 * (p + 2) {
        k += 1;
    }
    (a + 1, a + k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub n: usize,
    pub classes: usize,
    /// Classes with no representation over any tested prime.
    pub char_p_only: usize,
    pub certified: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LReport {
    pub command: String,
    pub p: u32,
    pub primes: Vec<u64>,
    pub n_max: usize,
    pub found: Option<usize>,
    pub witness: Option<Diagonal>,
    pub certificate: Option<Certificate>,
    pub interval: (u64, u64),
    pub in_interval: Option<bool>,
    pub levels: Vec<LevelSummary>,
    pub elapsed_ms: u64,
    pub nodes_visited: u64,
}

pub const MAX_L_P: u64 = 7;

/// Least `n` with a spike over GF(p) that no other tested characteristic represents,
/// backed by an exact certificate.
pub fn estimate_l(p: u64, primes: &[u64], n_max: usize, budget: u64) -> Result<LReport> {
    let start = Instant::now();
    if p > MAX_L_P || n_max > crate::spike::MAX_ORBIT_N {
        return Err(Error::TooLarge(format!("needs p <= {MAX_L_P} and n_max <= 7")));
    }
    let field = make_field(p)?;
    let others: Vec<u64> = primes.iter().copied().filter(|&q| q != p).collect();
    let interval = l_interval(p);
    let mut levels = Vec::new();
    let mut nodes = 0;
    for n in 3..=n_max {
        let classes = enumerate_spikes(p, n)?;
        let mut summary = LevelSummary { n, classes: classes.len(), char_p_only: 0, certified: 0 };
        let mut hit: Option<(Diagonal, Certificate)> = None;
        for class in &classes {
            let rep = characteristic_set(&class.diagonal, &others, budget)?;
            nodes += rep.nodes_visited;
            if rep.verdicts.iter().any(|v| v.representable == Representable::Unknown) {
                return Err(Error::BudgetExceeded { budget });
            }
            if rep.verdicts.iter().any(|v| v.representable == Representable::Yes) {
                continue;
            }
            summary.char_p_only += 1;
            let exact = rep.certificate.as_ref().filter(|c| {
                c.admissible.contains(p) && others.iter().all(|&q| !c.admissible.contains(q))
            });
            if let Some(c) = exact {
                summary.certified += 1;
                if hit.is_none() {
                    hit = Some((class.diagonal.clone(), c.clone()));
                }
            }
        }
        let any_candidate = summary.char_p_only > 0;
        levels.push(summary);
        if let Some((w, c)) = hit {
            return Ok(LReport {
                command: "lbound".into(),
                p: field.get(),
                primes: others,
                n_max,
                found: Some(n),
                witness: Some(w),
                certificate: Some(c),
                interval,
                in_interval: Some(interval.0 <= n as u64 && n as u64 <= interval.1),
                levels,
                elapsed_ms: start.elapsed().as_millis() as u64,
                nodes_visited: nodes,
            });
        }
        if any_candidate {
            return Err(Error::Inconclusive(format!(
                "n = {n} has spikes unrepresentable over the tested primes but none with a certificate"
            )));
        }
    }
    Ok(LReport {
        command: "lbound".into(),
        p: field.get(),
        primes: others,
        n_max,
        found: None,
        witness: None,
        certificate: None,
        interval,
        in_interval: None,
        levels,
        elapsed_ms: start.elapsed().as_millis() as u64,
        nodes_visited: nodes,
    })
}
