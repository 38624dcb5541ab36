use crate::fincat::{FinCat, Poset, PosetFunctor};
use crate::presheaf::Presheaf;

/// A tuple `x⃗` with `x_k ∈ X(F(k))` satisfying `Lift_F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiftAssignment {
    pub functor: PosetFunctor,
    /// Element indices into the carriers of `F(k)`.
    pub tuple: Vec<usize>,
}

/// `Lift_F(x⃗)`: `x_lo = X_{F(lo ≤ hi)}(x_hi)` for every relation of `k`.
pub fn satisfies_lift(shape: &Poset, f: &PosetFunctor, c: &FinCat, x: &Presheaf, tuple: &[usize]) -> bool {
    tuple.len() == shape.len()
        && (0..shape.len()).all(|k| tuple[k] < x.carrier(f.objects[k]).len())
        && (0..shape.len()).all(|hi| {
            shape
                .below(hi)
                .iter()
                .all(|&lo| x.act(f.arrow(shape, c, lo, hi), tuple[hi]) == tuple[lo])
        })
}

/// All tuples satisfying `Lift_F`, in lexicographic order of the values
/// chosen at the maximal elements. Every other entry is forced by the
/// entries above it.
pub fn enumerate_lifts(shape: &Poset, f: &PosetFunctor, c: &FinCat, x: &Presheaf) -> Vec<LiftAssignment> {
    let mut order = shape.linear_extension();
    order.reverse();
    let mut tuple = vec![usize::MAX; shape.len()];
    let mut out = Vec::new();

    fn go(
        i: usize,
        order: &[usize],
        shape: &Poset,
        f: &PosetFunctor,
        c: &FinCat,
        x: &Presheaf,
        tuple: &mut Vec<usize>,
        out: &mut Vec<LiftAssignment>,
    ) {
        let Some(&k) = order.get(i) else {
            out.push(LiftAssignment {
                functor: f.clone(),
                tuple: tuple.clone(),
            });
            return;
        };
        let above = shape.above(k);
        if let Some((&first, rest)) = above.split_first() {
            let forced = x.act(f.arrow(shape, c, k, first), tuple[first]);
            if rest.iter().all(|&h| x.act(f.arrow(shape, c, k, h), tuple[h]) == forced) {
                tuple[k] = forced;
                go(i + 1, order, shape, f, c, x, tuple, out);
            }
        } else {
            for v in 0..x.carrier(f.objects[k]).len() {
                tuple[k] = v;
                go(i + 1, order, shape, f, c, x, tuple, out);
            }
        }
        tuple[k] = usize::MAX;
    }

    go(0, &order, shape, f, c, x, &mut tuple, &mut out);
    out
}
