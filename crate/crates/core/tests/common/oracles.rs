//! Brute-force reference implementations for the permutation code.

use std::collections::HashSet;

use fig8_core::covers::{CoverSpec, Partition, Permutation};

fn tuples(classes: &[Vec<Permutation>], f: &mut impl FnMut(&[&Permutation])) {
    fn rec<'a>(classes: &'a [Vec<Permutation>], cur: &mut Vec<&'a Permutation>, f: &mut impl FnMut(&[&Permutation])) {
        if cur.len() == classes.len() {
            f(cur);
            return;
        }
        for g in &classes[cur.len()] {
            cur.push(g);
            rec(classes, cur, f);
            cur.pop();
        }
    }
    rec(classes, &mut Vec::new(), f);
}

fn members(p: &Partition) -> Vec<Permutation> {
    Permutation::all(p.n()).into_iter().filter(|g| &g.cycle_type() == p).collect()
}

/// Tuples with prescribed cycle types multiplying to the identity, counted
/// one by one.
pub fn product_count(classes: &[Partition]) -> u64 {
    let n = classes[0].n();
    let lists: Vec<Vec<Permutation>> = classes.iter().map(members).collect();
    let mut count = 0;
    tuples(&lists, &mut |t| {
        let p = t.iter().fold(Permutation::identity(n), |a, g| a.then(g));
        if p.is_identity() {
            count += 1;
        }
    });
    count
}

/// Products of `g` commutators in `S_n`.
pub fn commutator_products(n: usize, g: usize) -> HashSet<Permutation> {
    let all = Permutation::all(n);
    let k1: HashSet<Permutation> = all.iter().flat_map(|a| all.iter().map(move |b| a.commutator(b))).collect();
    let mut cur: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
    for _ in 0..g {
        cur = cur.iter().flat_map(|x| k1.iter().map(move |c| x.then(c))).collect();
    }
    cur
}

/// Whether some homomorphism realizes the spec: boundary images of the
/// given types whose product is inverse to a product of `genus` commutators.
pub fn extends_brute_force(spec: &CoverSpec) -> bool {
    let n = spec.degree();
    let ks = commutator_products(n, spec.genus);
    let lists: Vec<Vec<Permutation>> = spec.boundary_classes.iter().map(members).collect();
    let mut found = false;
    tuples(&lists, &mut |t| {
        if !found {
            let p = t.iter().fold(Permutation::identity(n), |a, g| a.then(g));
            found = ks.contains(&p.inverse());
        }
    });
    found
}

/// All class tuples with `k` entries over partitions of `n`, as multisets
/// of positions in `Partition::all(n)` (order matters for the product, so
/// every sequence is included).
pub fn class_tuples(n: usize, k: usize) -> Vec<Vec<Partition>> {
    let parts = Partition::all(n);
    let mut out: Vec<Vec<Partition>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                parts.iter().map(move |p| {
                    let mut t = t.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    out
}
