use std::collections::HashMap;

use super::{spec_from_parts, CategorySpec, CompositeSpec, FinCat, FinCatError, MorphismSpec, Obj};

/// A finite poset with named elements.
///
/// Stores strict lower and upper sets (sorted by index) plus covering
/// relations, which is all the functor search needs; the full category
/// view is built on demand by [`Poset::to_category`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    covers_below: Vec<Vec<usize>>,
    covers_above: Vec<Vec<usize>>,
    height: Vec<usize>,
}

impl Poset {
    /// Builds a poset from names and a relation, verifying reflexivity,
    /// antisymmetry and transitivity exhaustively.
    pub fn new(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Poset, FinCatError> {
        let n = names.len();
        for i in 0..n {
            if !leq(i, i) {
                return Err(FinCatError::NotAPoset(format!("`{}` ≰ itself", names[i])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq(i, j) && leq(j, i) {
                    return Err(FinCatError::NotAPoset(format!(
                        "`{}` and `{}` are distinct but comparable both ways",
                        names[i], names[j]
                    )));
                }
                if !leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if leq(j, k) && !leq(i, k) {
                        return Err(FinCatError::NotAPoset(format!(
                            "`{}` ≤ `{}` ≤ `{}` but not transitively",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        let below = (0..n)
            .map(|j| (0..n).filter(|&i| i != j && leq(i, j)).collect())
            .collect();
        Self::from_lower_sets(names, below)
    }

    /// Builds a poset from strict lower sets that are already known to be
    /// transitively closed and antisymmetric.
    pub(crate) fn from_lower_sets(
        names: Vec<String>,
        mut below: Vec<Vec<usize>>,
    ) -> Result<Poset, FinCatError> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(FinCatError::DuplicateName(name.clone()));
            }
        }
        for b in &mut below {
            b.sort_unstable();
        }
        let mut above = vec![Vec::new(); n];
        for (j, b) in below.iter().enumerate() {
            for &i in b {
                above[i].push(j);
            }
        }
        let lt = |i: usize, j: usize, below: &Vec<Vec<usize>>| below[j].binary_search(&i).is_ok();
        let covers_below: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                below[j]
                    .iter()
                    .copied()
                    .filter(|&i| !below[j].iter().any(|&k| k != i && lt(i, k, &below)))
                    .collect()
            })
            .collect();
        let mut covers_above = vec![Vec::new(); n];
        for (j, c) in covers_below.iter().enumerate() {
            for &i in c {
                covers_above[i].push(j);
            }
        }
        // A strict lower element has a strictly smaller lower set.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| below[i].len());
        let mut height = vec![0; n];
        for &j in &order {
            height[j] = covers_below[j].iter().map(|&i| height[i] + 1).max().unwrap_or(0);
        }
        Ok(Poset {
            names,
            index,
            below,
            above,
            covers_below,
            covers_above,
            height,
        })
    }

    /// Reads a thin, skeletal category as a poset.
    pub fn from_category(c: &FinCat) -> Result<Poset, FinCatError> {
        if !c.is_thin() {
            return Err(FinCatError::NotAPoset("some hom-set has two elements".into()));
        }
        for a in c.object_ids() {
            for b in c.object_ids() {
                if a != b && c.has_hom(a, b) && c.has_hom(b, a) {
                    return Err(FinCatError::NotAPoset(format!(
                        "`{}` and `{}` are isomorphic but distinct",
                        c.obj_name(a),
                        c.obj_name(b)
                    )));
                }
            }
        }
        let names = c.object_ids().map(|o| c.obj_name(o).to_string()).collect();
        Poset::new(names, |i, j| c.has_hom(Obj(i), Obj(j)))
    }

    /// The category with one morphism `x<=y` for each comparable pair.
    pub fn to_category(&self) -> FinCat {
        FinCat::from_spec(&self.to_category_spec()).expect("poset category is valid")
    }

    fn to_category_spec(&self) -> CategorySpec {
        let arrow = |i: usize, j: usize| format!("{}<={}", self.names[i], self.names[j]);
        let mut spec = spec_from_parts(&[], &[], &[], &[]);
        spec.objects = self.names.clone();
        for j in 0..self.len() {
            spec.identities.insert(self.names[j].clone(), arrow(j, j));
            spec.morphisms.push(MorphismSpec::new(arrow(j, j), &self.names[j], &self.names[j]));
            for &i in &self.below[j] {
                spec.morphisms.push(MorphismSpec::new(arrow(i, j), &self.names[i], &self.names[j]));
                for &k in &self.above[j] {
                    spec.compose.push(CompositeSpec::new(arrow(j, k), arrow(i, j), arrow(i, k)));
                }
            }
        }
        spec
    }

    pub fn empty() -> Poset {
        Poset::from_lower_sets(Vec::new(), Vec::new()).unwrap()
    }

    /// The total order `0 < 1 < … < n`.
    pub fn ordinal(n: usize) -> Poset {
        let names = (0..=n).map(|i| i.to_string()).collect();
        Poset::from_lower_sets(names, (0..=n).map(|j| (0..j).collect()).collect()).unwrap()
    }

    /// `n` pairwise incomparable elements named `0..n`.
    pub fn discrete(n: usize) -> Poset {
        let names = (0..n).map(|i| i.to_string()).collect();
        Poset::from_lower_sets(names, vec![Vec::new(); n]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.below[j].binary_search(&i).is_ok()
    }

    /// Strict lower set, sorted by index.
    pub fn below(&self, j: usize) -> &[usize] {
        &self.below[j]
    }

    /// Strict upper set, sorted by index.
    pub fn above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    pub fn covers_below(&self, j: usize) -> &[usize] {
        &self.covers_below[j]
    }

    pub fn covers_above(&self, i: usize) -> &[usize] {
        &self.covers_above[i]
    }

    /// Length of the longest chain ending at `i` (minimal elements have 0).
    pub fn height(&self, i: usize) -> usize {
        self.height[i]
    }

    pub fn minimal_elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.below[i].is_empty())
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.below[i].len() + 1 == self.len())
    }

    /// The fixed linear extension used by the functor search: breadth-first
    /// by height from the minimal elements, ties broken by name.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            (self.height[a], &self.names[a]).cmp(&(self.height[b], &self.names[b]))
        });
        order
    }

    /// All nonempty chains, each listed bottom-up, ordered by length and
    /// then by index sequence.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..self.len()).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let top = *chain.last().unwrap();
            for &next in &self.above[top] {
                let mut longer = chain.clone();
                longer.push(next);
                stack.push(longer);
            }
            out.push(chain);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Number of comparable pairs `i < j`.
    pub fn num_strict_relations(&self) -> usize {
        self.below.iter().map(Vec::len).sum()
    }
}

/// An order-preserving map between posets, given by element images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    pub image: Vec<usize>,
}

impl MonotoneMap {
    pub fn identity(n: usize) -> MonotoneMap {
        MonotoneMap { image: (0..n).collect() }
    }

    pub fn validate(&self, source: &Poset, target: &Poset) -> Result<(), FinCatError> {
        if self.image.len() != source.len() || self.image.iter().any(|&x| x >= target.len()) {
            return Err(FinCatError::FunctorViolation("element map has the wrong shape".into()));
        }
        for j in 0..source.len() {
            for &i in source.below(j) {
                if !target.leq(self.image[i], self.image[j]) {
                    return Err(FinCatError::FunctorViolation(format!(
                        "`{}` ≤ `{}` is not preserved",
                        source.name(i),
                        source.name(j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> MonotoneMap {
        MonotoneMap {
            image: self.image.iter().map(|&x| other.image[x]).collect(),
        }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.image.iter().max().map_or(0, |m| m + 1)];
        self.image.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cycles() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(matches!(Poset::new(names, |_, _| true), Err(FinCatError::NotAPoset(_))));
    }

    #[test]
    fn rejects_non_transitive() {
        let names = vec!["a".into(), "b".into(), "c".into()];
        let rel = |i: usize, j: usize| i == j || (i, j) == (0, 1) || (i, j) == (1, 2);
        assert!(matches!(Poset::new(names, rel), Err(FinCatError::NotAPoset(_))));
    }

    #[test]
    fn ordinal_structure() {
        let p = Poset::ordinal(3);
        assert_eq!(p.len(), 4);
        assert_eq!(p.covers_below(3), &[2]);
        assert_eq!(p.height(3), 3);
        assert_eq!(p.maximum(), Some(3));
        assert_eq!(p.chains().len(), 15);
    }

    #[test]
    fn category_round_trip() {
        let p = Poset::ordinal(2);
        let c = p.to_category();
        assert_eq!(c.num_morphisms(), 6);
        let back = Poset::from_category(&c).unwrap();
        assert_eq!(back.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let (bi, bj) = (back.index_of(p.name(i)).unwrap(), back.index_of(p.name(j)).unwrap());
                assert_eq!(p.leq(i, j), back.leq(bi, bj));
            }
        }
    }

    #[test]
    fn non_thin_category_is_not_a_poset() {
        assert!(Poset::from_category(&crate::fincat::parallel_pair()).is_err());
    }
}
