//! Combinatorics of monomial ideals: minimal generators, minimal vertex
//! covers (minimal primes), and irreducible decompositions (associated
//! primes).

use crate::monomial::Monomial;

/// Removes generators divisible by another generator; output sorted and
/// deduplicated.
pub fn minimal_generators(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

/// All inclusion-minimal variable sets meeting every edge. An empty edge
/// cannot be covered, so the result is empty; no edges gives `[[]]`.
pub fn minimal_vertex_covers(edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if edges.iter().any(|e| e.is_empty()) {
        return Vec::new();
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    extend_cover(edges, &mut current, &mut found);
    for c in &mut found {
        c.sort_unstable();
    }
    found.sort();
    found.dedup();
    let minimal: Vec<Vec<usize>> = found
        .iter()
        .filter(|c| !found.iter().any(|d| d != *c && is_subset(d, c)))
        .cloned()
        .collect();
    minimal
}

fn extend_cover(edges: &[Vec<usize>], current: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
    match edges.iter().find(|e| !e.iter().any(|v| current.contains(v))) {
        None => found.push(current.clone()),
        Some(edge) => {
            for &v in edge {
                current.push(v);
                extend_cover(edges, current, found);
                current.pop();
            }
        }
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.contains(v))
}

/// Irredundant irreducible decomposition. Each component is the ideal
/// `⟨x_i^{a_i} : a_i > 0⟩`, returned as its exponent vector `a`. The unit
/// ideal has no components; the zero ideal has the single component `0`.
pub fn irreducible_components(gens: &[Monomial], nvars: usize) -> Vec<Vec<u32>> {
    let mut comps = Vec::new();
    split(minimal_generators(gens), nvars, &mut comps);
    comps.sort();
    comps.dedup();
    let contained = |small: &Vec<u32>, big: &Vec<u32>| {
        // ⟨small⟩ ⊆ ⟨big⟩: every pure power of `small` lies in `big`
        small
            .iter()
            .zip(big)
            .all(|(&s, &b)| s == 0 || (b > 0 && b <= s))
    };
    comps
        .iter()
        .filter(|c| !comps.iter().any(|d| d != *c && contained(d, c)))
        .cloned()
        .collect()
}

fn split(gens: Vec<Monomial>, nvars: usize, out: &mut Vec<Vec<u32>>) {
    if gens.iter().any(|g| g.is_one()) {
        return;
    }
    match gens.iter().position(|g| g.support().len() >= 2) {
        None => {
            let mut exps = vec![0u32; nvars];
            for g in &gens {
                let v = g.pure_power_var().unwrap();
                let e = g.exponents()[v];
                if exps[v] == 0 || e < exps[v] {
                    exps[v] = e;
                }
            }
            out.push(exps);
        }
        Some(pos) => {
            let g = &gens[pos];
            let var = g.support()[0];
            let mut power = vec![0u32; nvars];
            power[var] = g.exponents()[var];
            let power = Monomial::new(power);
            let rest = power.quotient_of(g).unwrap();
            for piece in [power, rest] {
                let mut next: Vec<Monomial> = gens
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != pos)
                    .map(|(_, m)| m.clone())
                    .collect();
                next.push(piece);
                split(minimal_generators(&next), nvars, out);
            }
        }
    }
}

/// Radicals of the irreducible components, deduplicated and sorted.
pub fn associated_prime_supports(gens: &[Monomial], nvars: usize) -> Vec<Vec<usize>> {
    let mut primes: Vec<Vec<usize>> = irreducible_components(gens, nvars)
        .into_iter()
        .map(|c| c.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect())
        .collect();
    primes.sort();
    primes.dedup();
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn minimalization() {
        let g = minimal_generators(&[m(&[2, 1]), m(&[1, 3]), m(&[2, 2]), m(&[2, 1])]);
        assert_eq!(g, vec![m(&[1, 3]), m(&[2, 1])]);
    }

    #[test]
    fn covers() {
        assert_eq!(minimal_vertex_covers(&[vec![0, 1]]), vec![vec![0], vec![1]]);
        assert_eq!(minimal_vertex_covers(&[vec![0], vec![0, 1]]), vec![vec![0]]);
        assert_eq!(minimal_vertex_covers(&[]), vec![Vec::<usize>::new()]);
        assert!(minimal_vertex_covers(&[vec![]]).is_empty());
        // triangle: every pair of vertices
        let tri = [vec![0, 1], vec![1, 2], vec![0, 2]];
        assert_eq!(minimal_vertex_covers(&tri), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn decomposition_with_embedded_component() {
        // ⟨x², xy⟩ = ⟨x⟩ ∩ ⟨x², y⟩
        let comps = irreducible_components(&[m(&[2, 0]), m(&[1, 1])], 2);
        assert_eq!(comps, vec![vec![1, 0], vec![2, 1]]);
        assert_eq!(associated_prime_supports(&[m(&[2, 0]), m(&[1, 1])], 2), vec![vec![0], vec![0, 1]]);
    }

    #[test]
    fn squarefree_has_no_embedded_primes() {
        assert_eq!(associated_prime_supports(&[m(&[1, 1])], 2), vec![vec![0], vec![1]]);
    }

    #[test]
    fn degenerate_ideals() {
        assert_eq!(irreducible_components(&[], 2), vec![vec![0, 0]]);
        assert!(irreducible_components(&[m(&[0, 0])], 2).is_empty());
    }
}
