use std::collections::HashMap;

use super::{FinCatError, MonotoneMap, Poset};

/// `sd^k ∂Δ[n]` together with `sd^k Δ[n]` and the inclusion between them.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub boundary: Poset,
    pub simplex: Poset,
    pub inclusion: MonotoneMap,
}

struct Chains {
    poset: Poset,
    chains: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

fn chains_of(p: &Poset) -> Chains {
    let chains = p.chains();
    let index: HashMap<Vec<usize>, usize> =
        chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let names = chains
        .iter()
        .map(|c| {
            let inner: Vec<&str> = c.iter().map(|&x| p.name(x)).collect();
            format!("[{}]", inner.join(","))
        })
        .collect();
    let below = chains
        .iter()
        .map(|c| {
            let full = (1usize << c.len()) - 1;
            (1..full)
                .map(|mask| {
                    let sub: Vec<usize> = c
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask & (1 << b) != 0)
                        .map(|(_, &x)| x)
                        .collect();
                    index[&sub]
                })
                .collect()
        })
        .collect();
    let poset = Poset::from_lower_sets(names, below).expect("chain names are distinct");
    Chains {
        poset,
        chains,
        index,
    }
}

/// The poset of nonempty chains of `p` ordered by inclusion, whose nerve is
/// the barycentric subdivision of the nerve of `p`.
pub fn chain_poset(p: &Poset) -> Poset {
    chains_of(p).poset
}

/// Sends a chain to its maximum element.
pub fn collapse_functor(p: &Poset) -> (Poset, MonotoneMap) {
    let ch = chains_of(p);
    let image = ch.chains.iter().map(|c| *c.last().unwrap()).collect();
    (ch.poset, MonotoneMap { image })
}

/// The `l`-fold collapse `sd^l p → p`, computed as iterated maxima.
pub fn collapse_power(p: &Poset, l: usize) -> (Poset, MonotoneMap) {
    let mut current = p.clone();
    let mut total = MonotoneMap::identity(p.len());
    for _ in 0..l {
        let (next, step) = collapse_functor(&current);
        total = step.then(&total);
        current = next;
    }
    (current, total)
}

/// `sd φ`: sends a chain of `source` to its image chain in `target`.
pub fn chain_lift(phi: &MonotoneMap, source: &Poset, target: &Poset) -> (Poset, Poset, MonotoneMap) {
    let src = chains_of(source);
    let tgt = chains_of(target);
    let image = src
        .chains
        .iter()
        .map(|c| {
            let mut img: Vec<usize> = c.iter().map(|&x| phi.apply(x)).collect();
            img.dedup();
            tgt.index[&img]
        })
        .collect();
    (src.poset, tgt.poset, MonotoneMap { image })
}

fn subset_name(mask: usize, n: usize) -> String {
    let items: Vec<String> = (0..=n).filter(|i| mask & (1 << i) != 0).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn subset_poset(n: usize, include_top: bool) -> Poset {
    let top = (1usize << (n + 1)) - 1;
    let mut masks: Vec<usize> = (1..=top).filter(|&m| include_top || m != top).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let pos: HashMap<usize, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let names = masks.iter().map(|&m| subset_name(m, n)).collect();
    let below = masks
        .iter()
        .map(|&m| {
            masks
                .iter()
                .filter(|&&s| s != m && s & m == s)
                .map(|s| pos[s])
                .collect()
        })
        .collect();
    Poset::from_lower_sets(names, below).unwrap()
}

/// `sd^k Δ[n]` as a poset; `k = 0` gives the ordinal `[n]`.
pub fn sd_simplex_poset(n: usize, k: usize) -> Poset {
    if k == 0 {
        return Poset::ordinal(n);
    }
    let mut p = subset_poset(n, true);
    for _ in 1..k {
        p = chain_poset(&p);
    }
    p
}

/// `sd^k ∂Δ[n]` with its inclusion into `sd^k Δ[n]`. `∂Δ[0]` is empty.
pub fn sd_boundary_poset(n: usize, k: usize) -> Result<Subdivision, FinCatError> {
    if k == 0 {
        return Err(FinCatError::InvalidDimension(
            "the boundary of a simplex is a poset only after at least one subdivision".into(),
        ));
    }
    let simplex = sd_simplex_poset(n, k);
    let mut boundary = if n == 0 { Poset::empty() } else { subset_poset(n, false) };
    for _ in 1..k {
        boundary = chain_poset(&boundary);
    }
    let image = boundary
        .names()
        .iter()
        .map(|name| simplex.index_of(name).expect("boundary chains are chains of the simplex"))
        .collect();
    Ok(Subdivision {
        boundary,
        simplex,
        inclusion: MonotoneMap { image },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivision_sizes() {
        assert_eq!(sd_simplex_poset(1, 1).len(), 3);
        assert_eq!(sd_simplex_poset(2, 1).len(), 7);
        assert_eq!(sd_simplex_poset(2, 2).len(), 25);
        assert_eq!(sd_simplex_poset(2, 3).len(), 121);
        assert_eq!(sd_boundary_poset(2, 1).unwrap().boundary.len(), 6);
        assert_eq!(sd_boundary_poset(1, 1).unwrap().boundary.len(), 2);
        assert_eq!(sd_boundary_poset(2, 2).unwrap().boundary.len(), 12);
        assert!(sd_boundary_poset(0, 1).unwrap().boundary.is_empty());
        assert!(sd_boundary_poset(2, 0).is_err());
    }

    #[test]
    fn sd_interval_is_a_cospan() {
        let p = sd_simplex_poset(1, 1);
        assert_eq!(p.names(), &["{0}", "{1}", "{0,1}"]);
        assert_eq!(p.below(2), &[0, 1]);
    }

    #[test]
    fn twelve_gon_is_a_zigzag() {
        let b = sd_boundary_poset(2, 2).unwrap().boundary;
        // six vertices of height 0, six edges of height 1, every edge covers two vertices
        assert_eq!((0..12).filter(|&i| b.height(i) == 0).count(), 6);
        assert!((0..12).filter(|&i| b.height(i) == 1).all(|i| b.covers_below(i).len() == 2));
        assert!((0..12).filter(|&i| b.height(i) == 0).all(|i| b.covers_above(i).len() == 2));
    }

    #[test]
    fn nested_names_are_deterministic() {
        let a = sd_simplex_poset(2, 2);
        let b = sd_simplex_poset(2, 2);
        assert_eq!(a, b);
        assert!(a.index_of("[{0},{0,1},{0,1,2}]").is_some());
    }

    #[test]
    fn collapse_examples() {
        let p = sd_simplex_poset(1, 1);
        let (sd, max) = collapse_functor(&p);
        max.validate(&sd, &p).unwrap();
        let c = sd.index_of("[{0},{0,1}]").unwrap();
        assert_eq!(p.name(max.apply(c)), "{0,1}");
        let single = sd.index_of("[{1}]").unwrap();
        assert_eq!(p.name(max.apply(single)), "{1}");

        let (sd2, p2) = collapse_power(&p, 2);
        p2.validate(&sd2, &p).unwrap();
        let x = sd2.index_of("[[{0}],[{0},{0,1}]]").unwrap();
        assert_eq!(p.name(p2.apply(x)), "{0,1}");
    }

    #[test]
    fn chain_poset_of_cospan_is_zigzag() {
        let z = chain_poset(&sd_simplex_poset(1, 1));
        assert_eq!(z.len(), 5);
        assert_eq!(z.num_strict_relations(), 4);
        assert!(chain_poset(&Poset::empty()).is_empty());
        let d = chain_poset(&Poset::discrete(2));
        assert_eq!(d.len(), 2);
        assert_eq!(d.num_strict_relations(), 0);
    }
}
