use std::collections::HashSet;

use super::extend::{class_elements, CoverSpec, CoverWitness, Decision, Obstruction};
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Largest degree searched by default.
pub const DEFAULT_MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularOptions {
    pub max_degree: usize,
    /// Maximum number of search nodes before answering `Unknown`.
    pub budget: u64,
}

impl Default for RegularOptions {
    fn default() -> Self {
        RegularOptions { max_degree: DEFAULT_MAX_DEGREE, budget: 2_000_000 }
    }
}

/// The subgroup generated by `gens`, or `None` once it exceeds `limit`
/// elements.
pub fn closure(gens: &[Permutation], limit: usize) -> Option<Vec<Permutation>> {
    let n = gens.first().map_or(1, Permutation::degree);
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let h = out[i].then(g);
            if seen.insert(h.clone()) {
                if out.len() == limit {
                    return None;
                }
                out.push(h);
            }
        }
        i += 1;
    }
    Some(out)
}

fn group_order(gens: &[Permutation], limit: usize) -> Option<usize> {
    closure(gens, limit).map(|g| g.len())
}

struct Budget {
    explored: u64,
    limit: u64,
}

impl Budget {
    fn tick(&mut self) -> bool {
        self.explored += 1;
        self.explored <= self.limit
    }
}

/// Decides whether there are boundary monodromies `γᵢ` of the given cycle
/// types, and handle monodromies for positive genus, satisfying the surface
/// relation and generating a subgroup of order exactly `n`.
///
/// The first boundary monodromy is fixed to its class representative, since
/// the conditions are invariant under simultaneous conjugation.
pub fn regular_extends(spec: &CoverSpec, opts: RegularOptions) -> Result<Decision> {
    let n = spec.degree();
    if n > opts.max_degree {
        return Err(Error::InvalidParameters(format!("degree {n} exceeds the search limit {}", opts.max_degree)));
    }
    let mut budget = Budget { explored: 0, limit: opts.budget };
    let classes = &spec.boundary_classes;
    let mut lists = Vec::with_capacity(classes.len());
    for c in &classes[1..] {
        lists.push(class_elements(c));
    }
    let mut chosen = vec![classes[0].representative()];
    let found = boundary_rec(spec, &lists, &mut chosen, &mut budget);
    Ok(match found {
        Some(Some(witness)) => {
            debug_assert!(witness.verify(spec));
            Decision::Extends { witness }
        }
        Some(None) => Decision::DoesNotExtend { reason: Obstruction::NoRegularWitness },
        None => Decision::Unknown { explored: budget.explored },
    })
}

/// `None` on budget exhaustion, `Some(None)` if the subtree has no witness.
fn boundary_rec(
    spec: &CoverSpec,
    lists: &[Vec<Permutation>],
    chosen: &mut Vec<Permutation>,
    budget: &mut Budget,
) -> Option<Option<CoverWitness>> {
    if !budget.tick() {
        return None;
    }
    let n = spec.degree();
    let order = group_order(chosen, n)?;
    if !n.is_multiple_of(order) {
        return Some(None);
    }
    let k = spec.boundary_classes.len();
    if chosen.len() == k {
        return complete_handles(spec, chosen, budget);
    }
    let planar_last = spec.genus == 0 && chosen.len() == k - 1;
    if planar_last {
        let product = chosen.iter().fold(Permutation::identity(n), |a, c| a.then(c));
        let last = product.inverse();
        if last.cycle_type() != spec.boundary_classes[k - 1] {
            return Some(None);
        }
        chosen.push(last);
        let r = boundary_rec(spec, lists, chosen, budget);
        chosen.pop();
        return r;
    }
    for g in &lists[chosen.len() - 1] {
        chosen.push(g.clone());
        let r = boundary_rec(spec, lists, chosen, budget);
        chosen.pop();
        match r {
            Some(None) => {}
            other => return other,
        }
    }
    Some(None)
}

/// With the boundary fixed, searches handle images inside groups of order
/// `n` containing the boundary monodromies.
fn complete_handles(spec: &CoverSpec, boundary: &[Permutation], budget: &mut Budget) -> Option<Option<CoverWitness>> {
    let n = spec.degree();
    let product = boundary.iter().fold(Permutation::identity(n), |a, c| a.then(c));
    if spec.genus == 0 {
        return Some(if product.is_identity() && group_order(boundary, n) == Some(n) {
            Some(CoverWitness { handles: Vec::new(), boundary: boundary.to_vec() })
        } else {
            None
        });
    }
    let target = product.inverse();
    // the handles generate together with the boundary, so every group of
    // order n containing the boundary is a candidate
    let mut candidates: Vec<Permutation> =
        Permutation::all(n).into_iter().filter(|g| (n as u64).is_multiple_of(g.order()) && !g.is_identity()).collect();
    candidates.sort_by_key(|g| std::cmp::Reverse(g.order()));
    let mut visited: HashSet<Vec<Permutation>> = HashSet::new();
    let mut stack = vec![boundary.to_vec()];
    while let Some(gens) = stack.pop() {
        if !budget.tick() {
            return None;
        }
        let mut group = closure(&gens, n).expect("order checked on push");
        group.sort();
        if !visited.insert(group.clone()) {
            continue;
        }
        if group.len() == n {
            match handles_in(&group, spec.genus, &target, boundary, budget) {
                Some(None) => continue,
                other => return other.map(|h| h.map(|handles| CoverWitness { handles, boundary: boundary.to_vec() })),
            }
        }
        let members: HashSet<&Permutation> = group.iter().collect();
        for x in candidates.iter().rev() {
            if members.contains(x) {
                continue;
            }
            let mut next = gens.clone();
            next.push(x.clone());
            if let Some(order) = group_order(&next, n) {
                if n.is_multiple_of(order) {
                    stack.push(next);
                }
            }
        }
    }
    Some(None)
}

/// Handle pairs in `group` whose commutator product is `target` and which
/// generate `group` together with the boundary.
fn handles_in(
    group: &[Permutation],
    genus: usize,
    target: &Permutation,
    boundary: &[Permutation],
    budget: &mut Budget,
) -> Option<Option<Vec<(Permutation, Permutation)>>> {
    let n = group.len();
    let mut handles: Vec<(Permutation, Permutation)> = Vec::with_capacity(genus);
    fn rec(
        group: &[Permutation],
        genus: usize,
        acc: &Permutation,
        target: &Permutation,
        boundary: &[Permutation],
        handles: &mut Vec<(Permutation, Permutation)>,
        budget: &mut Budget,
        n: usize,
    ) -> Option<bool> {
        if !budget.tick() {
            return None;
        }
        if handles.len() == genus {
            if acc != target {
                return Some(false);
            }
            let mut gens: Vec<Permutation> = boundary.to_vec();
            for (a, b) in handles.iter() {
                gens.push(a.clone());
                gens.push(b.clone());
            }
            return Some(group_order(&gens, n) == Some(n));
        }
        for a in group {
            for b in group {
                handles.push((a.clone(), b.clone()));
                match rec(group, genus, &acc.then(&a.commutator(b)), target, boundary, handles, budget, n) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {
                        handles.pop();
                    }
                }
            }
        }
        Some(false)
    }
    let id = Permutation::identity(target.degree());
    match rec(group, genus, &id, target, boundary, &mut handles, budget, n)? {
        true => Some(Some(handles)),
        false => Some(None),
    }
}

/// Exhaustive oracle over every tuple of handle and boundary images in `S_n`.
pub fn regular_extends_brute_force(spec: &CoverSpec) -> bool {
    let n = spec.degree();
    let all = Permutation::all(n);
    let slots = 2 * spec.genus + spec.boundary_classes.len();
    let mut idx = vec![0usize; slots];
    loop {
        let images: Vec<&Permutation> = idx.iter().map(|&i| &all[i]).collect();
        let handles: Vec<(Permutation, Permutation)> =
            (0..spec.genus).map(|j| (images[2 * j].clone(), images[2 * j + 1].clone())).collect();
        let boundary: Vec<Permutation> = images[2 * spec.genus..].iter().map(|&p| p.clone()).collect();
        let w = CoverWitness { handles, boundary };
        if w.verify(spec) && group_order(&w.generators(), n) == Some(n) {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == slots {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < all.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::Partition;

    fn spec(g: usize, classes: &[&str]) -> CoverSpec {
        CoverSpec::new(g, classes.iter().map(|c| c.parse().unwrap()).collect()).unwrap()
    }

    fn decide(s: &CoverSpec) -> Option<bool> {
        regular_extends(s, RegularOptions::default()).unwrap().extends()
    }

    #[test]
    fn examples() {
        assert_eq!(decide(&spec(1, &["2"])), Some(false));
        let s = spec(1, &["1,1"]);
        let d = regular_extends(&s, RegularOptions::default()).unwrap();
        let w = d.witness().unwrap();
        assert!(w.verify(&s));
        assert_eq!(closure(&w.generators(), 2).unwrap().len(), 2);
        assert_eq!(decide(&spec(0, &["2", "2"])), Some(true));
    }

    #[test]
    fn one_boundary_never_connected() {
        // a single boundary with connected preimage: the cover group would be
        // generated by commutators of an order-n group containing an n-cycle
        for n in 2..=6 {
            let s = CoverSpec::new(1, vec![Partition::new(vec![n as u32]).unwrap()]).unwrap();
            assert_eq!(decide(&s), Some(false), "n = {n}");
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let cases: &[(usize, &[&str])] = &[
            (0, &["2", "2"]),
            (0, &["3", "3", "3"]),
            (0, &["2,1", "2,1"]),
            (0, &["2,2", "2,2", "2,2"]),
            (0, &["4", "4", "2,2"]),
            (1, &["1,1"]),
            (1, &["2"]),
            (1, &["1,1,1"]),
            (1, &["3"]),
            (1, &["2,2"]),
            (1, &["1,1,1,1"]),
            (0, &["1,1,1", "3", "3"]),
        ];
        for (g, cl) in cases {
            let s = spec(*g, cl);
            assert_eq!(decide(&s), Some(regular_extends_brute_force(&s)), "{g} {cl:?}");
        }
    }

    #[test]
    fn witnesses_have_order_n() {
        for (g, cl) in [(1, vec!["2,2"]), (0, vec!["2,2", "2,2", "2,2"]), (2, vec!["1,1,1,1"]), (1, vec!["2,2,2,2"])] {
            let s = spec(g, &cl);
            if let Decision::Extends { witness } = regular_extends(&s, RegularOptions::default()).unwrap() {
                assert!(witness.verify(&s));
                assert_eq!(closure(&witness.generators(), s.degree()).unwrap().len(), s.degree());
            }
        }
    }

    #[test]
    fn budget_and_limits() {
        let s = spec(1, &["2,2,2,2"]);
        let tiny = RegularOptions { budget: 2, ..Default::default() };
        assert!(matches!(regular_extends(&s, tiny).unwrap(), Decision::Unknown { .. }));
        let s = spec(0, &["9", "9"]);
        assert!(regular_extends(&s, RegularOptions::default()).is_err());
    }
}
