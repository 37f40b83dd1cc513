use serde::Serialize;

use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::word::GroupWord;

/// `n`-cycles `c₁, c₂` with `c₁ · c₂ = σ`, for an even `σ`.
///
/// Scans the `n`-cycles `c₁` in lexicographic order and returns the first
/// for which `c₁⁻¹ · σ` is again an `n`-cycle.
pub fn two_n_cycles(sigma: &Permutation) -> Result<(Permutation, Permutation)> {
    if !sigma.is_even() {
        return Err(Error::OddPermutation);
    }
    let n = sigma.degree();
    for c1 in Permutation::full_cycles(n) {
        let c2 = c1.inverse().then(sigma);
        if c2.is_full_cycle() {
            debug_assert_eq!(c1.then(&c2), *sigma);
            return Ok((c1, c2));
        }
    }
    // every even permutation is a product of two n-cycles
    unreachable!("no factorization of {sigma} into two {n}-cycles")
}

/// `(α, β)` with `α β α⁻¹ β⁻¹ = σ`, for an even `σ`.
///
/// With `σ = c₁ c₂` a product of two `n`-cycles, `c₂` is conjugate to `c₁⁻¹`:
/// `c₂ = β c₁⁻¹ β⁻¹`, so `σ = c₁ β c₁⁻¹ β⁻¹`.
pub fn commutator_witness(sigma: &Permutation) -> Result<(Permutation, Permutation)> {
    if !sigma.is_even() {
        return Err(Error::OddPermutation);
    }
    let n = sigma.degree();
    if sigma.is_identity() {
        return Ok((Permutation::identity(n), Permutation::identity(n)));
    }
    let (c1, c2) = two_n_cycles(sigma)?;
    let beta = conjugator(&c1.inverse(), &c2);
    let alpha = c1;
    let check = alpha.commutator(&beta);
    assert_eq!(&check, sigma, "commutator construction failed");
    Ok((alpha, beta))
}

/// `β` with `β x β⁻¹ = y` for two `n`-cycles.
///
/// Under right action `β x β⁻¹` is the cycle `(β⁻¹(x₁) … β⁻¹(xₙ))`, so matching
/// it with `(y₁ … yₙ)` means `β(yᵢ) = xᵢ`.
fn conjugator(x: &Permutation, y: &Permutation) -> Permutation {
    let n = x.degree();
    let xs = x.cycles().into_iter().next().expect("nonempty");
    let ys = y.cycles().into_iter().next().expect("nonempty");
    let mut images = vec![0; n];
    for (xi, yi) in xs.into_iter().zip(ys) {
        images[yi] = xi;
    }
    let b = Permutation::from_images(images).expect("bijection");
    debug_assert_eq!(b.then(x).then(&b.inverse()), *y);
    b
}

/// Degree-`n` cover of the once-punctured torus built from `n` copies of the
/// square glued in a row by `σ`, with vertical gluing `τ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripCover {
    pub degree: usize,
    pub sigma: Permutation,
    pub tau: Permutation,
    pub boundary_monodromy: Permutation,
    pub boundary_components: usize,
    pub genus: usize,
    pub euler_characteristic: i64,
}

pub fn strip_cover(sigma: &Permutation, tau: &Permutation) -> Result<StripCover> {
    if !sigma.is_full_cycle() {
        return Err(Error::NotFullCycle);
    }
    if sigma.degree() != tau.degree() {
        return Err(Error::SizeMismatch(sigma.degree(), tau.degree()));
    }
    let n = sigma.degree();
    let boundary = sigma.commutator(tau);
    let b = boundary.num_cycles();
    let chi = -(n as i64);
    // χ = 2 − 2g − b
    let twice_genus = 2 - chi - b as i64;
    assert!(twice_genus >= 0 && twice_genus % 2 == 0, "Euler characteristic mismatch: n = {n}, b = {b}");
    Ok(StripCover {
        degree: n,
        sigma: sigma.clone(),
        tau: tau.clone(),
        boundary_monodromy: boundary,
        boundary_components: b,
        genus: (twice_genus / 2) as usize,
        euler_characteristic: chi,
    })
}

/// Image of a word under generator monodromies (right action, letters in order).
pub fn word_monodromy(monodromies: &[Permutation], w: &GroupWord) -> Result<Permutation> {
    let n = monodromies.first().map_or(1, Permutation::degree);
    if let Some(bad) = monodromies.iter().find(|p| p.degree() != n) {
        return Err(Error::SizeMismatch(n, bad.degree()));
    }
    let mut acc = Permutation::identity(n);
    for &l in w.letters() {
        let idx = (l.unsigned_abs() - 1) as usize;
        let g = monodromies.get(idx).ok_or(Error::UnassignedGenerator(idx + 1))?;
        acc = if l > 0 { acc.then(g) } else { acc.then(&g.inverse()) };
    }
    Ok(acc)
}

/// Number of components of the preimage of each boundary curve: the number
/// of cycles of its monodromy.
pub fn boundary_lift_components(monodromies: &[Permutation], boundary_words: &[GroupWord]) -> Result<Vec<usize>> {
    boundary_words.iter().map(|w| Ok(word_monodromy(monodromies, w)?.num_cycles())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn two_cycles_examples() {
        assert_eq!(two_n_cycles(&p("()", 3)).unwrap(), (p("(1 2 3)", 3), p("(1 3 2)", 3)));
        assert_eq!(two_n_cycles(&p("(1 2 3)", 3)).unwrap(), (p("(1 3 2)", 3), p("(1 3 2)", 3)));
        let s = p("(1 2)(3 4)", 4);
        let (a, b) = two_n_cycles(&s).unwrap();
        assert!(a.is_full_cycle() && b.is_full_cycle());
        assert_eq!(a.then(&b), s);
        assert_eq!(two_n_cycles(&p("(1 2)", 3)), Err(Error::OddPermutation));
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(commutator_witness(&p("()", 4)).unwrap(), (p("()", 4), p("()", 4)));
        for s in ["(1 2 3)", "(1 2)(3 4)"] {
            let s = p(s, 4);
            let (a, b) = commutator_witness(&s).unwrap();
            assert_eq!(a.commutator(&b), s);
        }
        assert_eq!(commutator_witness(&p("(1 2)", 2)), Err(Error::OddPermutation));
    }

    #[test]
    fn strip_examples() {
        let s = p("(1 2 3)", 3);
        let c = strip_cover(&s, &p("()", 3)).unwrap();
        assert!(c.boundary_monodromy.is_identity());
        assert_eq!(c.boundary_components, 3);
        assert_eq!(c.genus, 1);
        let c = strip_cover(&s, &s).unwrap();
        assert_eq!(c.boundary_components, 3);
        let t = p("(1 2)", 3);
        let c = strip_cover(&s, &t).unwrap();
        // oracle: compose by hand, σ τ σ⁻¹ τ⁻¹ point by point
        let by_hand: Vec<usize> = (0..3)
            .map(|i| {
                let si = s.inverse();
                t.inverse().apply(si.apply(t.apply(s.apply(i))))
            })
            .collect();
        assert_eq!(c.boundary_monodromy.images(), by_hand);
        assert_eq!(c.boundary_components, c.boundary_monodromy.num_cycles());
        assert_eq!(c.boundary_components, 1);
        assert_eq!(c.genus, 2);
        assert_eq!(strip_cover(&t, &t), Err(Error::NotFullCycle));
    }

    #[test]
    fn gamma2_double_cover() {
        let mono = [p("(1 2)", 2), p("(1 2)", 2)];
        let words: Vec<GroupWord> = ["a", "b", "BA"].iter().map(|s| GroupWord::free2(s).unwrap()).collect();
        assert_eq!(boundary_lift_components(&mono, &words).unwrap(), vec![1, 1, 2]);
        let trivial = [p("()", 1), p("()", 1)];
        assert_eq!(boundary_lift_components(&trivial, &words).unwrap(), vec![1, 1, 1]);
        assert_eq!(
            boundary_lift_components(&mono[..1], &words),
            Err(Error::UnassignedGenerator(2))
        );
    }
}
