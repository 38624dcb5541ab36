use std::collections::BTreeMap;
use std::sync::Arc;

use crate::fincat::FinCat;

use super::{Presheaf, PresheafError, PresheafMorphism};

/// `B ∪_A C` with its two legs.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Presheaf,
    pub left: PresheafMorphism,
    pub right: PresheafMorphism,
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Pointwise pushout of `B ← A → C`. Elements of `B` are tagged `1:` and
/// those of `C` are tagged `2:`; a class is named by its sorted members
/// joined with `=`.
pub fn pushout(f: &PresheafMorphism, g: &PresheafMorphism) -> Result<Pushout, PresheafError> {
    if f.source() != g.source() || f.target().base() != g.target().base() {
        return Err(PresheafError::BaseMismatch);
    }
    let (a, b, c) = (f.source(), f.target(), g.target());
    let base = a.base().clone();
    let mut carriers = Vec::with_capacity(base.num_objects());
    // class index of every element of B ⊔ C, per object
    let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(base.num_objects());
    for o in base.object_ids() {
        let nb = b.carrier(o).len();
        let n = nb + c.carrier(o).len();
        let mut parent: Vec<usize> = (0..n).collect();
        for x in 0..a.carrier(o).len() {
            let (p, q) = (find(&mut parent, f.component(o)[x]), find(&mut parent, nb + g.component(o)[x]));
            if p != q {
                parent[p.max(q)] = p.min(q);
            }
        }
        let tag = |i: usize| {
            if i < nb {
                format!("1:{}", b.carrier(o)[i])
            } else {
                format!("2:{}", c.carrier(o)[i - nb])
            }
        };
        let mut members: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            members.entry(r).or_default().push(tag(i));
        }
        let roots: Vec<usize> = members.keys().copied().collect();
        let names: Vec<String> = members
            .into_values()
            .map(|mut m| {
                m.sort();
                m.join("=")
            })
            .collect();
        class_of.push((0..n).map(|i| roots.binary_search(&find(&mut parent, i)).unwrap()).collect());
        carriers.push(names);
    }
    let action = base
        .morphism_ids()
        .map(|m| {
            let (dom, cod) = (base.dom(m), base.cod(m));
            let nb_cod = b.carrier(cod).len();
            let nb_dom = b.carrier(dom).len();
            let mut row = vec![usize::MAX; carriers[cod.0].len()];
            for i in 0..class_of[cod.0].len() {
                let img = if i < nb_cod { b.act(m, i) } else { nb_dom + c.act(m, i - nb_cod) };
                row[class_of[cod.0][i]] = class_of[dom.0][img];
            }
            row
        })
        .collect();
    let object = Presheaf::from_parts(base.clone(), carriers.clone(), action)?;
    // from_parts sorts carriers, so resolve the legs by class name
    let leg = |src: &Presheaf, shift: bool| -> Vec<Vec<usize>> {
        base.object_ids()
            .map(|o| {
                let nb = if shift { b.carrier(o).len() } else { 0 };
                (0..src.carrier(o).len())
                    .map(|i| object.element_index(o, &carriers[o.0][class_of[o.0][nb + i]]).unwrap())
                    .collect()
            })
            .collect()
    };
    let left = PresheafMorphism::new(b.clone(), object.clone(), leg(b, false))?;
    let right = PresheafMorphism::new(c.clone(), object.clone(), leg(c, true))?;
    Ok(Pushout { object, left, right })
}

/// Pointwise disjoint union; elements of the `i`-th summand are tagged `i:`.
pub fn coproduct(base: &Arc<FinCat>, parts: &[Presheaf]) -> Result<Presheaf, PresheafError> {
    if parts.iter().any(|p| p.base() != base) {
        return Err(PresheafError::BaseMismatch);
    }
    let offset = |o: crate::fincat::Obj, k: usize| -> usize { parts[..k].iter().map(|p| p.carrier(o).len()).sum() };
    let carriers = base
        .object_ids()
        .map(|o| {
            parts
                .iter()
                .enumerate()
                .flat_map(|(k, p)| p.carrier(o).iter().map(move |e| format!("{k}:{e}")))
                .collect()
        })
        .collect();
    let action = base
        .morphism_ids()
        .map(|m| {
            let dom = base.dom(m);
            parts
                .iter()
                .enumerate()
                .flat_map(|(k, p)| {
                    let shift = offset(dom, k);
                    p.action(m).iter().map(move |&x| x + shift).collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    Presheaf::from_parts(base.clone(), carriers, action)
}

/// Colimit of a finite chain `X_0 → X_1 → … → X_n` of strong embeddings,
/// which is its last object. The chain is checked link by link.
pub fn chain_colimit(chain: &[PresheafMorphism]) -> Result<Presheaf, PresheafError> {
    for (i, m) in chain.iter().enumerate() {
        if !m.is_strong_embedding() || (i > 0 && chain[i - 1].target() != m.source()) {
            return Err(PresheafError::BrokenChain(i));
        }
    }
    chain.last().map(|m| m.target().clone()).ok_or(PresheafError::BrokenChain(0))
}
