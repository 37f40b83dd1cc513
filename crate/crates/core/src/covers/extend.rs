use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use super::character::frobenius_count;
use super::construct::commutator_witness;
use super::partition::{Parity, Partition};
use super::perm::Permutation;
use crate::error::{Error, Result};

/// A surface of genus `genus` with one boundary component per class, and the
/// prescribed cycle types of the boundary monodromies of a degree-`n` cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverSpec {
    pub genus: usize,
    pub boundary_classes: Vec<Partition>,
}

impl CoverSpec {
    pub fn new(genus: usize, boundary_classes: Vec<Partition>) -> Result<Self> {
        let Some(first) = boundary_classes.first() else {
            return Err(Error::InvalidCoverSpec("at least one boundary class is required".into()));
        };
        let n = first.n();
        if n == 0 {
            return Err(Error::InvalidCoverSpec("degree must be positive".into()));
        }
        if let Some(bad) = boundary_classes.iter().find(|c| c.n() != n) {
            return Err(Error::InvalidCoverSpec(format!("class {bad} is not a partition of {n}")));
        }
        Ok(CoverSpec { genus, boundary_classes })
    }

    pub fn degree(&self) -> usize {
        self.boundary_classes[0].n()
    }

    /// Sum of the class parities.
    pub fn parity(&self) -> Parity {
        let odd = self.boundary_classes.iter().filter(|c| c.parity() == Parity::Odd).count();
        if odd % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Images of the generators of `⟨α₁, β₁, …, α_g, β_g, c₁, …, c_k |
/// ∏[αᵢ, βᵢ] · c₁ ⋯ c_k⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    pub handles: Vec<(Permutation, Permutation)>,
    pub boundary: Vec<Permutation>,
}

impl CoverWitness {
    /// `∏[αᵢ, βᵢ] · c₁ ⋯ c_k`; the identity for a valid witness.
    pub fn relation(&self) -> Permutation {
        let n = self.boundary[0].degree();
        let mut acc = Permutation::identity(n);
        for (a, b) in &self.handles {
            acc = acc.then(&a.commutator(b));
        }
        for c in &self.boundary {
            acc = acc.then(c);
        }
        acc
    }

    pub fn generators(&self) -> Vec<Permutation> {
        let mut g: Vec<Permutation> = self.handles.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        g.extend(self.boundary.iter().cloned());
        g
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(&self.generators())
    }

    /// Checks the relation and the boundary cycle types.
    pub fn verify(&self, spec: &CoverSpec) -> bool {
        self.relation().is_identity()
            && self.handles.len() == spec.genus
            && self.boundary.len() == spec.boundary_classes.len()
            && self.boundary.iter().zip(&spec.boundary_classes).all(|(c, p)| &c.cycle_type() == p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Obstruction {
    /// Odd total parity on a surface of positive genus.
    Parity,
    /// No boundary tuple multiplies to the identity (genus 0).
    NoProductSolution,
    /// No transitive witness exists.
    NotTransitive,
    /// No subgroup of the required order admits a witness.
    NoRegularWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Decision {
    Extends { witness: CoverWitness },
    DoesNotExtend { reason: Obstruction },
    /// The search budget ran out before a decision.
    Unknown { explored: u64 },
}

impl Decision {
    pub fn extends(&self) -> Option<bool> {
        match self {
            Decision::Extends { .. } => Some(true),
            Decision::DoesNotExtend { .. } => Some(false),
            Decision::Unknown { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&CoverWitness> {
        match self {
            Decision::Extends { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtendOptions {
    /// Only accept witnesses whose generators act transitively.
    pub transitive_only: bool,
    /// Maximum number of search nodes before answering `Unknown`.
    pub budget: u64,
}

impl Default for ExtendOptions {
    fn default() -> Self {
        ExtendOptions { transitive_only: false, budget: 10_000_000 }
    }
}

pub fn is_transitive(gens: &[Permutation]) -> bool {
    let Some(n) = gens.first().map(Permutation::degree) else { return true };
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for g in gens {
            for j in [g.apply(i), g.inverse().apply(i)] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// All permutations of the given cycle type.
pub fn class_elements(p: &Partition) -> Vec<Permutation> {
    Permutation::all(p.n()).into_iter().filter(|g| &g.cycle_type() == p).collect()
}

/// Decides whether boundary covers with the given cycle types extend to a
/// cover of the surface, returning a witness homomorphism when they do.
///
/// Genus 0 needs boundary monodromies multiplying to the identity (counted by
/// the Frobenius formula, found by backtracking). Positive genus needs only
/// even total parity: the boundary product is then a commutator.
pub fn extends_cover(spec: &CoverSpec, opts: ExtendOptions) -> Result<Decision> {
    if spec.genus == 0 {
        if !opts.transitive_only && frobenius_count(&spec.boundary_classes)?.is_zero() {
            return Ok(Decision::DoesNotExtend { reason: Obstruction::NoProductSolution });
        }
        return Ok(match planar_search(spec, opts) {
            Search::Found(boundary) => Decision::Extends { witness: CoverWitness { handles: Vec::new(), boundary } },
            Search::Exhausted => Decision::DoesNotExtend {
                reason: if opts.transitive_only { Obstruction::NotTransitive } else { Obstruction::NoProductSolution },
            },
            Search::Budget(explored) => Decision::Unknown { explored },
        });
    }
    if spec.parity() == Parity::Odd {
        return Ok(Decision::DoesNotExtend { reason: Obstruction::Parity });
    }
    let n = spec.degree();
    let boundary: Vec<Permutation> = spec.boundary_classes.iter().map(Partition::representative).collect();
    let product = boundary.iter().fold(Permutation::identity(n), |acc, c| acc.then(c));
    let (mut a, b) = commutator_witness(&product.inverse())?;
    if opts.transitive_only && !a.is_full_cycle() {
        // only the identity lands here; [n-cycle, e] = e is transitive
        a = Permutation::full_cycles(n).swap_remove(0);
    }
    let mut handles = vec![(a, b)];
    handles.resize(spec.genus, (Permutation::identity(n), Permutation::identity(n)));
    let witness = CoverWitness { handles, boundary };
    debug_assert!(witness.verify(spec));
    Ok(Decision::Extends { witness })
}

enum Search {
    Found(Vec<Permutation>),
    Exhausted,
    Budget(u64),
}

/// Backtracking for `c₁ ⋯ c_k = e` with `c₁` fixed to a class representative
/// (simultaneous conjugation) and `c_k` forced by the product.
fn planar_search(spec: &CoverSpec, opts: ExtendOptions) -> Search {
    let classes = &spec.boundary_classes;
    let k = classes.len();
    let first = classes[0].representative();
    if k == 1 {
        return if first.is_identity() && (!opts.transitive_only || is_transitive(std::slice::from_ref(&first))) {
            Search::Found(vec![first])
        } else {
            Search::Exhausted
        };
    }
    let mut lists: HashMap<&Partition, Vec<Permutation>> = HashMap::new();
    for c in &classes[1..k - 1] {
        lists.entry(c).or_insert_with(|| class_elements(c));
    }
    let mut explored = 0u64;
    let mut chosen = vec![first.clone()];
    fn rec(
        i: usize,
        acc: &Permutation,
        chosen: &mut Vec<Permutation>,
        classes: &[Partition],
        lists: &HashMap<&Partition, Vec<Permutation>>,
        opts: ExtendOptions,
        explored: &mut u64,
    ) -> Option<bool> {
        *explored += 1;
        if *explored > opts.budget {
            return None;
        }
        let k = classes.len();
        if i == k - 1 {
            let last = acc.inverse();
            if last.cycle_type() != classes[k - 1] {
                return Some(false);
            }
            chosen.push(last);
            if opts.transitive_only && !is_transitive(chosen) {
                chosen.pop();
                return Some(false);
            }
            return Some(true);
        }
        for g in &lists[&classes[i]] {
            chosen.push(g.clone());
            match rec(i + 1, &acc.then(g), chosen, classes, lists, opts, explored) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {
                    chosen.pop();
                }
            }
        }
        Some(false)
    }
    match rec(1, &first, &mut chosen, classes, &lists, opts, &mut explored) {
        Some(true) => Search::Found(chosen),
        Some(false) => Search::Exhausted,
        None => Search::Budget(explored),
    }
}
