//! Independent oracles shared by the integration tests. Nothing here calls
//! the closed forms it is used to check.

#![allow(dead_code)]

use rand::Rng;
use spike_lab::spike::swap_via_matrix;
use spike_lab::{make_field, Diagonal, IndexSet};

pub fn modp(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

fn inv_fermat(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Laplace expansion along the first row.
pub fn cofactor_det(a: &[Vec<u64>], p: u64) -> u64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return a[0][0] % p;
    }
    let mut total = 0u64;
    for c in 0..n {
        if a[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<u64>> = a[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
            .collect();
        let term = a[0][c] * cofactor_det(&minor, p) % p;
        total = if c % 2 == 0 { (total + term) % p } else { (total + p - term) % p };
    }
    total
}

/// Rank by plain row reduction with Fermat inverses.
pub fn rank_mod(rows: &[Vec<u64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = inv_fermat(a[rank][c], p);
        for v in a[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..cols {
                    a[r][j] = (a[r][j] + p * p - f * a[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Columns of `[I | 1 | 1 + diag(x)]` built from scratch.
pub fn spike_columns(x: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = x.len();
    let mut cols = Vec::with_capacity(2 * n + 1);
    for i in 0..n {
        cols.push((0..n).map(|r| u64::from(r == i)).collect());
    }
    cols.push(vec![1; n]);
    for i in 0..n {
        cols.push((0..n).map(|r| if r == i { (1 + x[i]) % p } else { 1 }).collect());
    }
    cols
}

pub fn rank_of_columns(cols: &[Vec<u64>], pick: &[usize], p: u64) -> usize {
    let n = cols[0].len();
    let rows: Vec<Vec<u64>> = (0..n).map(|r| pick.iter().map(|&c| cols[c][r]).collect()).collect();
    rank_mod(&rows, p)
}

/// Transversal with `f_i` at `k`: column indices into [`spike_columns`].
pub fn transversal(n: usize, k: u32) -> Vec<usize> {
    (0..n).map(|i| if k >> i & 1 == 1 { n + 1 + i } else { i }).collect()
}

/// Dependent transversals found with the rank oracle.
pub fn dependent_transversals(x: &[u64], p: u64) -> Vec<u32> {
    let n = x.len();
    let cols = spike_columns(x, p);
    (0..1u32 << n).filter(|&k| rank_of_columns(&cols, &transversal(n, k), p) < n).collect()
}

pub fn diag(p: u64, x: &[u32]) -> Diagonal {
    Diagonal::new(make_field(p).unwrap(), x.to_vec()).unwrap()
}

pub fn random_diagonal<R: Rng>(rng: &mut R, p: u64, n: usize) -> Diagonal {
    let x: Vec<u32> = (0..n).map(|_| rng.gen_range(1..p as u32)).collect();
    diag(p, &x)
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
    v
}

pub fn all_diagonals(p: u64, n: usize) -> Vec<Diagonal> {
    let base = p - 1;
    (0..base.pow(n as u32))
        .map(|mut idx| {
            let mut x = vec![0u32; n];
            for slot in x.iter_mut().rev() {
                *slot = (idx % base) as u32 + 1;
                idx /= base;
            }
            diag(p, &x)
        })
        .collect()
}

/// Orbit partition by union-find over matrix swaps and adjacent transpositions.
pub fn orbit_partition(p: u64, n: usize) -> Vec<Vec<Diagonal>> {
    let all = all_diagonals(p, n);
    let index = |d: &Diagonal| all.iter().position(|e| e == d).unwrap();
    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for (i, x) in all.iter().enumerate() {
        let mut neighbours = Vec::new();
        for b in 1..1u32 << n {
            if let Ok(y) = swap_via_matrix(x, IndexSet::from_bits(b)) {
                neighbours.push(y);
            }
        }
        for t in 0..n.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(t, t + 1);
            neighbours.push(x.permute(&perm));
        }
        for y in neighbours {
            let (a, b) = (find(&mut parent, i), find(&mut parent, index(&y)));
            parent[a] = b;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Diagonal>> = Default::default();
    for i in 0..all.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(all[i].clone());
    }
    groups.into_values().collect()
}

/// Least nonempty subset (sorted-sequence order) with the given sum, by enumeration.
pub fn brute_subset_sum(a: &[u64], k: u64, p: u64) -> Option<Vec<usize>> {
    let n = a.len();
    (1u32..1 << n)
        .filter(|&b| (0..n).filter(|i| b >> i & 1 == 1).map(|i| a[i]).sum::<u64>() % p == k % p)
        .map(|b| (0..n).filter(|i| b >> i & 1 == 1).map(|i| i + 1).collect::<Vec<_>>())
        .min()
}
