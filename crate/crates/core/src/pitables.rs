//! Homotopy groups of spheres from a table, and `pi_k(M)` assembled from the
//! loop decomposition: `pi_k(M) = pi_{k-1}(Omega M)`, a direct sum over the
//! product factors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::loops::{prime_power_factors, LoopFactorMultiset};

pub const DEFAULT_TABLE: &str = include_str!("../data/sphere_groups.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: pi_{k}(S^{n}) = {group} contradicts pi_k(S^n) = 0 for k < n and pi_n(S^n) = Z")]
    CoverageViolation { line: usize, n: u32, k: u32, group: String },
    #[error("pi_{k}(S^{n}) is not in the table")]
    OutOfRange { n: u32, k: u32 },
    #[error("pi_{k}(M) needs Loop(S^m) factors with m up to {k}, but only m <= {max_dim} were enumerated")]
    Truncated { k: u32, max_dim: u32 },
    #[error("pi_{k}(M) needs pi_{}(S^3{{{n}}}), which is only known in degrees <= 2", k - 1)]
    UnsupportedDegree { k: u32, n: u64 },
    #[error("cannot read table: {0}")]
    Io(String),
}

/// Finitely generated abelian group `Z^r + (sum of Z/p^e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FGAbelianGroup {
    pub free_rank: u32,
    /// Prime-power orders, sorted ascending.
    pub torsion: Vec<u64>,
}

impl FGAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: u32) -> Self {
        FGAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`, split into its primary parts. `n = 1` is the trivial group.
    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1, "cyclic order must be positive");
        let mut torsion: Vec<u64> = prime_power_factors(n).into_iter().map(|(p, r)| p.pow(r)).collect();
        torsion.sort_unstable();
        FGAbelianGroup { free_rank: 0, torsion }
    }

    pub fn from_parts(free_rank: u32, orders: &[u64]) -> Self {
        orders
            .iter()
            .fold(Self::free(free_rank), |acc, &n| acc.direct_sum(&Self::cyclic(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        torsion.sort_unstable();
        FGAbelianGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }

    pub fn order_of_torsion(&self) -> u64 {
        self.torsion.iter().product()
    }

    /// Invariant factors `n_1 | n_2 | ...`, ascending.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &q in &self.torsion {
            let p = prime_power_factors(q)[0].0;
            by_prime.entry(p).or_default().push(q);
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in powers.iter().enumerate() {
                factors[len - 1 - i] *= q;
            }
        }
        debug_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
        factors
    }
}

impl fmt::Display for FGAbelianGroup {
    /// `Z^2 + Z/12 + Z/2`: free part first, then invariant factors from the
    /// largest down.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors().iter().rev().map(|n| format!("Z/{n}")));
        f.write_str(&parts.join(" + "))
    }
}

/// Table of `pi_k(S^n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereTable {
    entries: BTreeMap<(u32, u32), FGAbelianGroup>,
}

impl SphereTable {
    pub fn default_table() -> Self {
        Self::parse(DEFAULT_TABLE).expect("shipped table parses")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TableError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| TableError::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| TableError::Parse { line: line_no, message };
            let nums: Vec<u64> = line
                .split_whitespace()
                .map(|tok| tok.parse::<u64>().map_err(|_| err(format!("not a nonnegative integer: {tok:?}"))))
                .collect::<Result<_, _>>()?;
            if nums.len() < 3 {
                return Err(err("expected `n k free_rank [torsion orders...]`".into()));
            }
            let (n, k, free) = (nums[0] as u32, nums[1] as u32, nums[2] as u32);
            if n == 0 {
                return Err(err("sphere dimension must be positive".into()));
            }
            if let Some(bad) = nums[3..].iter().find(|&&q| q < 2) {
                return Err(err(format!("torsion order {bad} must be at least 2")));
            }
            let group = FGAbelianGroup::from_parts(free, &nums[3..]);
            let forced = if k < n {
                Some(FGAbelianGroup::zero())
            } else if k == n {
                Some(FGAbelianGroup::free(1))
            } else {
                None
            };
            if forced.is_some_and(|g| g != group) {
                return Err(TableError::CoverageViolation {
                    line: line_no,
                    n,
                    k,
                    group: group.to_string(),
                });
            }
            if entries.insert((n, k), group).is_some() {
                return Err(err(format!("duplicate entry for pi_{k}(S^{n})")));
            }
        }
        Ok(SphereTable { entries })
    }

    /// Largest stored `(n, k)` bounds.
    pub fn coverage(&self) -> (u32, u32) {
        let n = self.entries.keys().map(|&(n, _)| n).max().unwrap_or(0);
        let k = self.entries.keys().map(|&(_, k)| k).max().unwrap_or(0);
        (n, k)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `pi_k(S^n)`. Values forced by connectivity, degree, and the contractible
    /// universal cover of `S^1` are answered without the table.
    pub fn pi_sphere(&self, n: u32, k: u32) -> Result<FGAbelianGroup, TableError> {
        if k < n || (n == 1 && k > 1) {
            return Ok(FGAbelianGroup::zero());
        }
        if k == n {
            return Ok(FGAbelianGroup::free(1));
        }
        self.entries
            .get(&(n, k))
            .cloned()
            .ok_or(TableError::OutOfRange { n, k })
    }
}

/// `pi_k(M)` for `k >= 2`, from the factors of `Omega M`.
pub fn pi_manifold(
    factors: &LoopFactorMultiset,
    table: &SphereTable,
    k: u32,
) -> Result<FGAbelianGroup, TableError> {
    assert!(k >= 2, "pi_1(M) = 0; ask for k >= 2");
    if factors.truncated && k > factors.max_sphere_dim {
        return Err(TableError::Truncated {
            k,
            max_dim: factors.max_sphere_dim,
        });
    }
    let mut acc = FGAbelianGroup::zero();
    if k == 2 {
        acc.free_rank += factors.circles as u32;
    }
    for &n in &factors.mod_factors {
        match k {
            2 => {}
            3 => acc = acc.direct_sum(&FGAbelianGroup::cyclic(n)),
            _ => return Err(TableError::UnsupportedDegree { k, n }),
        }
    }
    for (&dim, &mult) in &factors.sphere_loops {
        let g = table.pi_sphere(dim, k)?;
        for _ in 0..mult {
            acc = acc.direct_sum(&g);
        }
    }
    Ok(acc)
}
