use std::collections::BTreeMap;
use std::sync::Arc;

use crate::fincat::{CategorySpec, CompositeSpec, FinCat, Functor, MorphismSpec, Obj};

use super::Presheaf;

/// The category of elements `𝒞 ↓ X` with its projection to the base.
///
/// Objects are named `(c,x)`; the morphism `(c, X_f(y)) → (d, y)` lying
/// over `f: c → d` is named `f@y`.
#[derive(Clone, Debug)]
pub struct ElementsCategory {
    pub category: Arc<FinCat>,
    pub projection: Functor,
    /// For each object of `category`, the element it stands for.
    pub element_of: Vec<(Obj, usize)>,
    /// For each base object and element index, the corresponding object.
    pub object_of: Vec<Vec<Obj>>,
}

impl ElementsCategory {
    pub fn object(&self, c: Obj, x: usize) -> Obj {
        self.object_of[c.0][x]
    }
}

fn object_name(x: &Presheaf, c: Obj, i: usize) -> String {
    format!("({},{})", x.base().obj_name(c), x.carrier(c)[i])
}

pub fn category_of_elements(x: &Presheaf) -> ElementsCategory {
    let base = x.base();
    let mut spec = CategorySpec {
        compose: Vec::new(),
        identities: BTreeMap::new(),
        morphisms: Vec::new(),
        objects: x.elements().map(|(c, i)| object_name(x, c, i)).collect(),
    };
    let mor_name = |f, y: usize| format!("{}@{}", base.mor_name(f), x.carrier(base.cod(f))[y]);
    for f in base.morphism_ids() {
        let (c, d) = (base.dom(f), base.cod(f));
        for y in 0..x.carrier(d).len() {
            let name = mor_name(f, y);
            spec.morphisms.push(MorphismSpec::new(&name, object_name(x, c, x.act(f, y)), object_name(x, d, y)));
            if base.is_identity(f) {
                spec.identities.insert(object_name(x, d, y), name);
            }
        }
    }
    for f in base.nonidentity_morphisms() {
        for g in base.out_of(base.cod(f)).filter(|&g| !base.is_identity(g)) {
            let gf = base.comp(g, f);
            for z in 0..x.carrier(base.cod(g)).len() {
                spec.compose.push(CompositeSpec::new(mor_name(g, z), mor_name(f, x.act(g, z)), mor_name(gf, z)));
            }
        }
    }
    let category = Arc::new(FinCat::from_spec(&spec).expect("the category of elements is a category"));
    let object_of: Vec<Vec<Obj>> = base
        .object_ids()
        .map(|c| {
            (0..x.carrier(c).len())
                .map(|i| category.object(&object_name(x, c, i)).unwrap())
                .collect()
        })
        .collect();
    let mut element_of = vec![(Obj(0), 0); category.num_objects()];
    for (c, i) in x.elements() {
        element_of[object_of[c.0][i].0] = (c, i);
    }
    let on_objects = element_of.iter().map(|&(c, _)| c).collect();
    let on_morphisms = category
        .morphism_ids()
        .map(|m| {
            let name = category.mor_name(m);
            let f = &name[..name.rfind('@').unwrap()];
            base.morphism(f).unwrap()
        })
        .collect();
    let projection = Functor::new(category.clone(), base.clone(), on_objects, on_morphisms)
        .expect("forgetting the element is a functor");
    ElementsCategory {
        category,
        projection,
        element_of,
        object_of,
    }
}

/// Element indices of each connected component, per base object. Components
/// are ordered by their least element name.
pub fn component_partition(x: &Presheaf) -> Vec<Vec<Vec<usize>>> {
    let base = x.base();
    let offset: Vec<usize> = base
        .object_ids()
        .scan(0, |acc, o| {
            let start = *acc;
            *acc += x.carrier(o).len();
            Some(start)
        })
        .collect();
    let n = x.num_elements();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for f in base.nonidentity_morphisms() {
        let (c, d) = (base.dom(f), base.cod(f));
        for y in 0..x.carrier(d).len() {
            let (a, b) = (root(&mut parent, offset[c.0] + x.act(f, y)), root(&mut parent, offset[d.0] + y));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for (c, i) in x.elements() {
        let r = root(&mut parent, offset[c.0] + i);
        by_root.entry(r).or_insert_with(|| vec![Vec::new(); base.num_objects()])[c.0].push(i);
    }
    let mut parts: Vec<Vec<Vec<usize>>> = by_root.into_values().collect();
    parts.sort_by_cached_key(|part| {
        base.object_ids()
            .flat_map(|o| part[o.0].iter().map(move |&i| (x.carrier(o)[i].clone(), o.0)))
            .min()
    });
    parts
}

/// The finest coproduct decomposition of `x`.
pub fn connected_components(x: &Presheaf) -> Vec<Presheaf> {
    component_partition(x)
        .iter()
        .map(|part| x.restrict(part).expect("components are subpresheaves"))
        .collect()
}
