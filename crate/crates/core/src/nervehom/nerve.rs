use std::collections::HashMap;

use crate::fincat::{FinCat, Mor};

use super::HomologyError;

/// Face of a nondegenerate simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    Simplex(usize),
    Degenerate,
}

/// Nondegenerate simplices up to `max_dim` with their faces.
///
/// `faces[d][i]` lists the `d + 1` faces of the `i`-th `d`-simplex and is
/// empty for vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSSet {
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Face>>>,
}

const FACE_CHECK_MAX_DIM: usize = 4;

impl TruncatedSSet {
    /// Checks face arity, index ranges and, up to dimension 4, the face
    /// identities `d_j d_m = d_{m-1} d_j` wherever both sides are defined.
    pub fn new(labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<Face>>>) -> Result<TruncatedSSet, HomologyError> {
        if labels.is_empty() || labels.len() != faces.len() {
            return Err(HomologyError::Malformed("need labels and faces for every dimension".into()));
        }
        for (d, (ls, fs)) in labels.iter().zip(&faces).enumerate() {
            if ls.len() != fs.len() {
                return Err(HomologyError::Malformed(format!("dimension {d}: label/face count mismatch")));
            }
            let arity = if d == 0 { 0 } else { d + 1 };
            for (i, f) in fs.iter().enumerate() {
                if f.len() != arity {
                    return Err(HomologyError::Malformed(format!("simplex {}: expected {arity} faces", ls[i])));
                }
                for face in f {
                    if let Face::Simplex(k) = face {
                        if *k >= labels[d - 1].len() {
                            return Err(HomologyError::Malformed(format!("simplex {}: face out of range", ls[i])));
                        }
                    }
                }
            }
        }
        let x = TruncatedSSet { labels, faces };
        x.check_face_identities()?;
        Ok(x)
    }

    fn check_face_identities(&self) -> Result<(), HomologyError> {
        for d in 2..=self.max_dim().min(FACE_CHECK_MAX_DIM) {
            for (i, fs) in self.faces[d].iter().enumerate() {
                for m in 1..=d {
                    for j in 0..m {
                        let lhs = match fs[m] {
                            Face::Simplex(y) => self.faces[d - 1][y][j],
                            Face::Degenerate => continue,
                        };
                        let rhs = match fs[j] {
                            Face::Simplex(y) => self.faces[d - 1][y][m - 1],
                            Face::Degenerate => continue,
                        };
                        if let (Face::Simplex(_), Face::Simplex(_)) = (lhs, rhs) {
                            if lhs != rhs {
                                return Err(HomologyError::FaceIdentity(format!(
                                    "d_{j} d_{m} ≠ d_{} d_{j} on {}",
                                    m - 1,
                                    self.labels[d][i]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn max_dim(&self) -> usize {
        self.labels.len() - 1
    }

    /// Number of nondegenerate `d`-simplices; zero above `max_dim`.
    pub fn count(&self, d: usize) -> usize {
        self.labels.get(d).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn label(&self, d: usize, i: usize) -> &str {
        &self.labels[d][i]
    }

    pub fn faces(&self, d: usize, i: usize) -> &[Face] {
        &self.faces[d][i]
    }

    /// Alternating sum of simplex counts up to `max_dim`.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

/// The nerve of `c` truncated at `max_dim`. Nondegenerate `d`-simplices are
/// chains `(f_1, …, f_d)` of composable nonidentity morphisms, applied
/// left to right.
pub fn nerve(c: &FinCat, max_dim: usize) -> TruncatedSSet {
    let nonid: Vec<Mor> = c.nonidentity_morphisms().collect();
    let mut chains: Vec<Vec<Vec<Mor>>> = vec![Vec::new(); max_dim + 1];
    if max_dim >= 1 {
        chains[1] = nonid.iter().map(|&f| vec![f]).collect();
    }
    for d in 2..=max_dim {
        let mut next = Vec::new();
        for ch in &chains[d - 1] {
            let end = c.cod(*ch.last().unwrap());
            for &g in &nonid {
                if c.dom(g) == end {
                    let mut ext = ch.clone();
                    ext.push(g);
                    next.push(ext);
                }
            }
        }
        chains[d] = next;
    }
    let index: Vec<HashMap<&[Mor], usize>> = chains
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, ch)| (ch.as_slice(), i)).collect())
        .collect();

    let mut labels = vec![c.object_ids().map(|o| c.obj_name(o).to_string()).collect::<Vec<_>>()];
    let mut faces = vec![vec![Vec::new(); c.num_objects()]];
    for d in 1..=max_dim {
        let mut ls = Vec::with_capacity(chains[d].len());
        let mut fs = Vec::with_capacity(chains[d].len());
        for ch in &chains[d] {
            let names: Vec<&str> = ch.iter().map(|&f| c.mor_name(f)).collect();
            ls.push(format!("({})", names.join(",")));
            let mut face = Vec::with_capacity(d + 1);
            if d == 1 {
                face.push(Face::Simplex(c.cod(ch[0]).index()));
                face.push(Face::Simplex(c.dom(ch[0]).index()));
            } else {
                face.push(Face::Simplex(index[d - 1][&ch[1..]]));
                for j in 1..d {
                    let g = c.comp(ch[j], ch[j - 1]);
                    if c.is_identity(g) {
                        face.push(Face::Degenerate);
                    } else {
                        let mut inner = Vec::with_capacity(d - 1);
                        inner.extend_from_slice(&ch[..j - 1]);
                        inner.push(g);
                        inner.extend_from_slice(&ch[j + 1..]);
                        face.push(Face::Simplex(index[d - 1][inner.as_slice()]));
                    }
                }
                face.push(Face::Simplex(index[d - 1][&ch[..d - 1]]));
            }
            fs.push(face);
        }
        labels.push(ls);
        faces.push(fs);
    }
    TruncatedSSet::new(labels, faces).expect("nerves satisfy the face identities")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{involution_pair, parallel_pair, suspension};

    #[test]
    fn nerve_dimensions() {
        assert_eq!(nerve(&parallel_pair(), 3).counts(), vec![2, 2, 0, 0]);
        assert_eq!(nerve(&involution_pair(), 4).counts(), vec![2, 3, 3, 3, 3]);
        let s = suspension(&parallel_pair());
        assert_eq!(nerve(&s.category, 3).counts(), vec![4, 6, 4, 0]);
    }

    #[test]
    fn involution_inner_faces_degenerate() {
        let x = nerve(&involution_pair(), 2);
        let tt = (0..x.count(2)).find(|&i| x.label(2, i) == "(tau,tau)").unwrap();
        assert_eq!(x.faces(2, tt)[1], Face::Degenerate);
    }

    #[test]
    fn bad_face_identity_is_rejected() {
        // a 2-simplex whose edges disagree on their shared vertex
        let labels = vec![
            vec!["a".into(), "b".into(), "c".into()],
            vec!["ab".into(), "bc".into(), "ac".into()],
            vec!["abc".into()],
        ];
        let faces = vec![
            vec![vec![]; 3],
            vec![
                vec![Face::Simplex(1), Face::Simplex(0)],
                vec![Face::Simplex(2), Face::Simplex(1)],
                vec![Face::Simplex(2), Face::Simplex(0)],
            ],
            vec![vec![Face::Simplex(1), Face::Simplex(2), Face::Simplex(1)]],
        ];
        assert!(matches!(TruncatedSSet::new(labels, faces), Err(HomologyError::FaceIdentity(_))));
    }
}
