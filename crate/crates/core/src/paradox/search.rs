//! Exhaustive search for paradoxes on a bounded exponent alphabet.
//!
//! Rows (candidate operators) are all assignments of an alphabet entry to
//! each party, minus the identity row. A set of `K` rows is enumerated as
//! `K - 1` strictly increasing row indices chosen depth-first; the last row
//! is then forced to be minus the sum of the others, which is exactly the
//! zero-column-sum condition. Branches are cut as soon as a new row fails
//! to commute with an earlier one, or the remaining rows can no longer zero
//! some party's column.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::{verify, OperatorSet, ParadoxError};
use crate::weyl::{LatticeParams, PartyExponent};

/// Default refusal threshold on the pre-pruning enumeration estimate.
pub const DEFAULT_MAX_NODES: u128 = 5_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
    #[error("search space too large: about {estimate} candidate sets exceeds the ceiling of {ceiling}")]
    TooLarge { estimate: u128, ceiling: u128 },
    #[error("alphabet entry ({}, {}) mixes X and Y on one party; it cannot be measured locally", .0.m, .0.n)]
    NonLocalAlphabet(PartyExponent),
    #[error(transparent)]
    Paradox(#[from] ParadoxError),
}

/// The bounded space a search runs over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub params: LatticeParams,
    pub n_parties: usize,
    pub n_operators: usize,
    /// Per-party exponent pairs a row may use. Every entry must be a pure
    /// X or pure Y power (or the identity).
    pub alphabet: Vec<PartyExponent>,
    /// Refuse to run when [`SearchSpace::estimate`] exceeds this.
    pub max_nodes: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// One canonical representative per equivalence class, ordered by total
    /// exponent magnitude and then lexicographically.
    pub sets: Vec<OperatorSet>,
    /// Paradoxical sets found before de-duplication.
    pub raw_hits: u64,
    /// Depth-first nodes visited.
    pub nodes: u64,
}

impl SearchSpace {
    /// All pure X and pure Y powers with `|exponent| ≤ max_exponent`, plus the
    /// identity.
    pub fn boxed(
        params: LatticeParams,
        n_parties: usize,
        n_operators: usize,
        max_exponent: i64,
    ) -> Result<Self, SearchError> {
        if max_exponent < 1 {
            return Err(SearchError::InvalidBounds(format!("max_exponent must be >= 1, got {max_exponent}")));
        }
        let mut alphabet = vec![PartyExponent::IDENTITY];
        for k in (-max_exponent..=max_exponent).filter(|&k| k != 0) {
            alphabet.push(PartyExponent::new(k, 0));
            alphabet.push(PartyExponent::new(0, k));
        }
        Self::with_alphabet(params, n_parties, n_operators, alphabet)
    }

    pub fn with_alphabet(
        params: LatticeParams,
        n_parties: usize,
        n_operators: usize,
        alphabet: Vec<PartyExponent>,
    ) -> Result<Self, SearchError> {
        if n_parties == 0 || n_operators == 0 {
            return Err(SearchError::InvalidBounds("need at least one party and one operator".into()));
        }
        if let Some(bad) = alphabet.iter().find(|e| e.m != 0 && e.n != 0) {
            return Err(SearchError::NonLocalAlphabet(*bad));
        }
        let mut alphabet = alphabet;
        alphabet.sort();
        alphabet.dedup();
        if alphabet.is_empty() {
            return Err(SearchError::InvalidBounds("empty alphabet".into()));
        }
        Ok(Self { params, n_parties, n_operators, alphabet, max_nodes: DEFAULT_MAX_NODES })
    }

    pub fn with_max_nodes(mut self, max_nodes: u128) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    fn n_rows(&self) -> u128 {
        let total = (self.alphabet.len() as u128).saturating_pow(self.n_parties as u32);
        if self.alphabet.contains(&PartyExponent::IDENTITY) {
            total - 1
        } else {
            total
        }
    }

    /// Upper bound on the number of candidate sets, before pruning:
    /// `C(rows, K - 1)`.
    pub fn estimate(&self) -> u128 {
        binomial(self.n_rows(), self.n_operators as u128 - 1)
    }

    pub fn run(&self) -> Result<SearchOutcome, SearchError> {
        let estimate = self.estimate();
        if estimate > self.max_nodes || self.n_rows() > u32::MAX as u128 {
            return Err(SearchError::TooLarge { estimate, ceiling: self.max_nodes });
        }
        Enumerator::new(self).run()
    }
}

/// Search with the default box alphabet; see [`SearchSpace::boxed`].
pub fn search(
    params: LatticeParams,
    n_parties: usize,
    n_operators: usize,
    max_exponent: i64,
) -> Result<Vec<OperatorSet>, SearchError> {
    Ok(SearchSpace::boxed(params, n_parties, n_operators, max_exponent)?.run()?.sets)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(n-i) is divisible by (i+1) at every step
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

struct Enumerator<'a> {
    space: &'a SearchSpace,
    rows: Vec<Vec<PartyExponent>>,
    index: HashMap<Vec<PartyExponent>, usize>,
    commutes: Vec<bool>,
    // reachable[r][j]: column sums that r alphabet entries can produce
    reachable: Vec<HashSet<(i64, i64)>>,
    found: HashSet<Vec<Vec<PartyExponent>>>,
    raw_hits: u64,
    nodes: u64,
}

impl<'a> Enumerator<'a> {
    fn new(space: &'a SearchSpace) -> Self {
        let mut rows: Vec<Vec<PartyExponent>> = vec![vec![]];
        for _ in 0..space.n_parties {
            rows = rows
                .into_iter()
                .flat_map(|prefix| {
                    space.alphabet.iter().map(move |e| {
                        let mut r = prefix.clone();
                        r.push(*e);
                        r
                    })
                })
                .collect();
        }
        rows.retain(|r| !r.iter().all(PartyExponent::is_identity));
        rows.sort();
        let index = rows.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();

        let d = space.params.d() as i64;
        let n = rows.len();
        let mut commutes = vec![false; n * n];
        for a in 0..n {
            for b in a..n {
                let form: i64 = rows[a].iter().zip(&rows[b]).map(|(x, y)| x.m * y.n - y.m * x.n).sum();
                let c = form.rem_euclid(d) == 0;
                commutes[a * n + b] = c;
                commutes[b * n + a] = c;
            }
        }

        let mut reachable = vec![HashSet::from([(0, 0)])];
        for r in 1..=space.n_operators {
            let next = reachable[r - 1]
                .iter()
                .flat_map(|&(sm, sn)| space.alphabet.iter().map(move |e| (sm + e.m, sn + e.n)))
                .collect();
            reachable.push(next);
        }

        Self { space, rows, index, commutes, reachable, found: HashSet::new(), raw_hits: 0, nodes: 0 }
    }

    fn run(mut self) -> Result<SearchOutcome, SearchError> {
        let mut chosen = Vec::with_capacity(self.space.n_operators);
        let mut sums = vec![(0i64, 0i64); self.space.n_parties];
        self.descend(&mut chosen, &mut sums, 0)?;

        let mut keys: Vec<_> = self.found.into_iter().collect();
        keys.sort_by_cached_key(|rows| (magnitude(rows), rows.clone()));
        let sets = keys
            .into_iter()
            .map(|rows| {
                OperatorSet::from_rows(
                    self.space.params,
                    rows.into_iter().map(|r| r.into_iter().map(|e| (e.m, e.n)).collect::<Vec<_>>()),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SearchOutcome { sets, raw_hits: self.raw_hits, nodes: self.nodes })
    }

    fn feasible(&self, sums: &[(i64, i64)], remaining: usize) -> bool {
        sums.iter().all(|&(sm, sn)| self.reachable[remaining].contains(&(-sm, -sn)))
    }

    fn descend(&mut self, chosen: &mut Vec<usize>, sums: &mut [(i64, i64)], start: usize) -> Result<(), SearchError> {
        self.nodes += 1;
        let n = self.rows.len();
        let k = self.space.n_operators;
        if chosen.len() + 1 == k {
            return self.close(chosen, sums);
        }
        for next in start..n {
            if !chosen.iter().all(|&c| self.commutes[c * n + next]) {
                continue;
            }
            for (s, e) in sums.iter_mut().zip(&self.rows[next]) {
                s.0 += e.m;
                s.1 += e.n;
            }
            if self.feasible(sums, k - chosen.len() - 1) {
                chosen.push(next);
                self.descend(chosen, sums, next + 1)?;
                chosen.pop();
            }
            for (s, e) in sums.iter_mut().zip(&self.rows[next]) {
                s.0 -= e.m;
                s.1 -= e.n;
            }
        }
        Ok(())
    }

    fn close(&mut self, chosen: &[usize], sums: &[(i64, i64)]) -> Result<(), SearchError> {
        let last: Vec<PartyExponent> = sums.iter().map(|&(m, n)| PartyExponent::new(-m, -n)).collect();
        let Some(&li) = self.index.get(&last) else {
            return Ok(());
        };
        if chosen.last().is_some_and(|&c| li <= c) {
            return Ok(());
        }
        let n = self.rows.len();
        if !chosen.iter().all(|&c| self.commutes[c * n + li]) {
            return Ok(());
        }
        let rows: Vec<Vec<PartyExponent>> =
            chosen.iter().chain(std::iter::once(&li)).map(|&i| self.rows[i].clone()).collect();
        let set = OperatorSet::from_rows(
            self.space.params,
            rows.iter().map(|r| r.iter().map(|e| (e.m, e.n)).collect::<Vec<_>>()),
        )?;
        if verify(&set)?.is_paradox {
            self.raw_hits += 1;
            self.found.insert(canonical_rows(&rows));
        }
        Ok(())
    }
}

fn magnitude(rows: &[Vec<PartyExponent>]) -> i64 {
    rows.iter().flatten().map(|e| e.m.abs() + e.n.abs()).sum()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Lexicographically least image of `rows` under party relabeling,
/// per-party exponent negation and operator reordering.
pub fn canonical_rows(rows: &[Vec<PartyExponent>]) -> Vec<Vec<PartyExponent>> {
    let n = rows.first().map_or(0, Vec::len);
    let mut best: Option<Vec<Vec<PartyExponent>>> = None;
    for perm in permutations(n) {
        for signs in 0u32..(1 << n) {
            let mut image: Vec<Vec<PartyExponent>> = rows
                .iter()
                .map(|r| {
                    perm.iter()
                        .enumerate()
                        .map(|(slot, &src)| {
                            let e = r[src];
                            if signs >> slot & 1 == 1 {
                                PartyExponent::new(-e.m, -e.n)
                            } else {
                                e
                            }
                        })
                        .collect()
                })
                .collect();
            image.sort();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
        }
    }
    best.unwrap_or_default()
}

/// Canonical representative of a set's equivalence class. Word prefactors
/// are dropped.
pub fn canonical_form(set: &OperatorSet) -> OperatorSet {
    let rows = canonical_rows(&set.exponent_rows());
    OperatorSet::from_rows(
        set.params(),
        rows.into_iter().map(|r| r.into_iter().map(|e| (e.m, e.n)).collect::<Vec<_>>()),
    )
    .expect("canonical image of a valid set is valid")
}
