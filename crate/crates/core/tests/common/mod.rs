//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use envlab::field::Field;
use envlab::linalg::Mat;
use envlab::module::FDModule;
use envlab::workbench::{load_corpus, resolve, Resolved};

pub const P: u64 = 101;

pub fn fixture(name: &str) -> Resolved {
    resolve(&load_corpus(name).expect("bundled fixture parses")).expect("bundled fixture resolves")
}

fn residue(m: &Mat, r: usize, c: usize) -> u64 {
    let v = Field::to_i64(m.get(r, c)).expect("integral entry");
    v.rem_euclid(P as i64) as u64
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// Rank of a dense matrix over F_p by plain Gaussian elimination on u64.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow(rows[rank][c], P - 2);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let k = rows[r][c];
                for j in 0..cols {
                    rows[r][j] = (rows[r][j] + P * P - k * rows[rank][j]) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// dim Hom(M, N) as the nullity of the full commuting system
/// `N(b) X_i = X_j M(b)` over every basis element `b` in slot `(i, j)`.
pub fn hom_dim_oracle(m: &FDModule, n: &FDModule) -> usize {
    let alg = m.algebra();
    let slots = alg.num_slots();
    let (dm, dn) = (m.dims(), n.dims());
    let mut offset = vec![0; slots + 1];
    for s in 0..slots {
        offset[s + 1] = offset[s] + dn[s] * dm[s];
    }
    let unknowns = offset[slots];
    // X_s entry (r, c) is unknown offset[s] + r * dm[s] + c
    let var = |s: usize, r: usize, c: usize| offset[s] + r * dm[s] + c;
    let mut rows = Vec::new();
    for b in 0..alg.dim() {
        let (i, j) = alg.slot_of(b);
        let (ma, na) = (m.action(b), n.action(b));
        for r in 0..dn[j] {
            for c in 0..dm[i] {
                let mut row = vec![0u64; unknowns];
                for k in 0..dn[i] {
                    let a = residue(na, r, k);
                    row[var(i, k, c)] = (row[var(i, k, c)] + a) % P;
                }
                for k in 0..dm[j] {
                    let a = residue(ma, k, c);
                    row[var(j, r, k)] = (row[var(j, r, k)] + P - a) % P;
                }
                rows.push(row);
            }
        }
    }
    unknowns - rank_mod_p(rows, unknowns)
}
