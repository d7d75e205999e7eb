//! Permutations of indexed configurations: matrix form, cycles, orders,
//! powers, and inverses.
//!
//! A reversible machine's combined step map acts on the finite set of
//! `(state, symbol)` configurations as a bijection, so everything about its
//! long-run behaviour (orbits, periods, undo) is permutation arithmetic on
//! config indices. Indices follow declaration order: state-major, then
//! symbol, so `(s1,1)=0, (s1,2)=1, ...`.

use std::fmt;

use crate::automaton::Automaton;
use crate::error::{Error, Result};

/// A bijection on `{0, .., size-1}`, stored in one-line notation:
/// `image[k]` is where `k` is sent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Validates that `image` is a bijection and wraps it.
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n {
                return Err(Error::NotABijection(format!(
                    "entry {v} out of range for size {n}"
                )));
            }
            if seen[v] {
                return Err(Error::NotABijection(format!("index {v} appears twice")));
            }
            seen[v] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            image: (0..size).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, idx: usize) -> Result<usize> {
        self.image
            .get(idx)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index: idx,
                size: self.size(),
            })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (k, &v) in self.image.iter().enumerate() {
            inv[v] = k;
        }
        Self { image: inv }
    }

    /// `self . other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                got: other.size(),
            });
        }
        let image = other.image.iter().map(|&v| self.image[v]).collect();
        Ok(Self { image })
    }

    /// `p^k(idx)` for any signed `k`; negative powers use the inverse.
    ///
    /// Walks the cycle containing `idx`, so arbitrary exponents cost at most
    /// one cycle traversal.
    pub fn apply_power(&self, k: i64, idx: usize) -> Result<usize> {
        if idx >= self.size() {
            return Err(Error::IndexOutOfRange {
                index: idx,
                size: self.size(),
            });
        }
        let mut cycle = vec![idx];
        let mut cur = self.image[idx];
        while cur != idx {
            cycle.push(cur);
            cur = self.image[cur];
        }
        let len = cycle.len() as i64;
        let offset = k.rem_euclid(len) as usize;
        Ok(cycle[offset])
    }

    /// 0/1 matrix: row `k` has its single 1 in column `image[k]`.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        let mut m = vec![vec![0u8; n]; n];
        for (k, &v) in self.image.iter().enumerate() {
            m[k][v] = 1;
        }
        m
    }

    /// Plain-text matrix export. The leading comment line pins the
    /// convention; the grid below it is stable byte for byte.
    pub fn matrix_text(&self) -> String {
        let mut out = String::from(
            "# rows = source configuration index (declaration order), row k has a 1 in column image[k]\n",
        );
        for row in self.matrix() {
            let line: Vec<String> = row.iter().map(|b| b.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Canonical cycle form: each cycle starts at its smallest index, cycles
    /// sorted by first element, fixed points kept as 1-cycles.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.size();
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                cycle.push(cur);
                cur = self.image[cur];
            }
            cycles.push(cycle);
        }
        // scanning from 0 already yields smallest-first rotation and sorted order
        let order = cycles
            .iter()
            .fold(1u128, |acc, c| lcm(acc, c.len() as u128));
        CycleDecomposition { cycles, order }
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// Disjoint cycles covering all indices, plus the permutation's order
/// (least `n >= 1` with the n-th power equal to the identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
    order: u128,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn order(&self) -> u128 {
        self.order
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            let inner: Vec<String> = cycle.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", inner.join(" "))?;
        }
        write!(f, " order={}", self.order)
    }
}

/// Exports the combined step map of a reversible machine as a permutation of
/// configuration indices.
///
/// Requires the input and output alphabets to be the same ordered set, so the
/// map permutes `states x inputs`.
pub fn to_permutation(a: &Automaton) -> Result<Permutation> {
    let report = a.check_reversible();
    if !report.reversible {
        return Err(Error::NotReversible {
            collisions: report.collisions.len(),
        });
    }
    if a.inputs() != a.outputs() {
        return Err(Error::AlphabetsDiffer);
    }
    let mut image = Vec::with_capacity(a.config_count());
    for idx in 0..a.config_count() {
        image.push(a.step_index(idx)?);
    }
    Permutation::from_image(image)
}

/// All `size!` permutations of `{0, .., size-1}`, in lexicographic order.
/// Meant for exhaustive checks over small configuration sets.
pub fn all_permutations(size: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..size).collect();
    let mut used = vec![false; size];
    fn rec(
        size: usize,
        depth: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Permutation>,
    ) {
        if depth == size {
            out.push(Permutation {
                image: current.clone(),
            });
            return;
        }
        for v in 0..size {
            if !used[v] {
                used[v] = true;
                current[depth] = v;
                rec(size, depth + 1, current, used, out);
                used[v] = false;
            }
        }
    }
    rec(size, 0, &mut current, &mut used, &mut out);
    out
}
