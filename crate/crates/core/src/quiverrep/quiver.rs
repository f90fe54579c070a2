use std::collections::HashMap;

use super::linalg::Fp;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A linear combination of paths, each path listed in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(u8, Vec<usize>)>,
}

/// A finite acyclic quiver with relations over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    field: Fp,
}

impl BoundQuiver {
    /// `arrows` are `(name, source label, target label)`; each relation is a list
    /// of `(coefficient, path of arrow names)` terms.
    pub fn new(
        vertices: Vec<String>,
        arrows: &[(String, String, String)],
        relations: &[Vec<(i64, Vec<String>)>],
        characteristic: u8,
    ) -> Result<Self> {
        let field = Fp::new(characteristic)?;
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let vertex = |l: &str| {
            seen.get(l)
                .copied()
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex `{l}`")))
        };
        let mut names = HashMap::new();
        let mut arrow_list = Vec::new();
        for (i, (name, src, dst)) in arrows.iter().enumerate() {
            if names.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow `{name}`")));
            }
            arrow_list.push(Arrow {
                name: name.clone(),
                src: vertex(src)?,
                dst: vertex(dst)?,
            });
        }

        let mut rels = Vec::new();
        for (r, terms) in relations.iter().enumerate() {
            if terms.is_empty() {
                return Err(Error::InvalidQuiver(format!("relation {r} is empty")));
            }
            let mut ends: Option<(usize, usize)> = None;
            let mut parsed = Vec::new();
            for (coef, path) in terms {
                if path.is_empty() {
                    return Err(Error::InvalidQuiver(format!("relation {r} has an empty path")));
                }
                let idx = path
                    .iter()
                    .map(|a| {
                        names
                            .get(a)
                            .copied()
                            .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow `{a}` in relation {r}")))
                    })
                    .collect::<Result<Vec<usize>>>()?;
                for w in idx.windows(2) {
                    if arrow_list[w[0]].dst != arrow_list[w[1]].src {
                        return Err(Error::InvalidQuiver(format!(
                            "relation {r}: `{}` then `{}` is not a path",
                            arrow_list[w[0]].name, arrow_list[w[1]].name
                        )));
                    }
                }
                let e = (arrow_list[idx[0]].src, arrow_list[*idx.last().unwrap()].dst);
                match ends {
                    None => ends = Some(e),
                    Some(prev) if prev != e => {
                        return Err(Error::InvalidQuiver(format!(
                            "relation {r} mixes paths with different endpoints"
                        )))
                    }
                    _ => {}
                }
                parsed.push((field.reduce(*coef), idx));
            }
            rels.push(Relation { terms: parsed });
        }

        let q = BoundQuiver {
            vertices,
            arrows: arrow_list,
            relations: rels,
            field,
        };
        q.check_acyclic()?;
        Ok(q)
    }

    fn check_acyclic(&self) -> Result<()> {
        // Kahn's algorithm.
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.dst] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.src == v) {
                indeg[a.dst] -= 1;
                if indeg[a.dst] == 0 {
                    stack.push(a.dst);
                }
            }
        }
        if seen == n {
            Ok(())
        } else {
            Err(Error::InvalidQuiver("quiver has an oriented cycle".into()))
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    /// All paths (as arrow sequences) starting at `v`, including the trivial one.
    pub fn paths_from(&self, v: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        let mut frontier = vec![(v, vec![])];
        while let Some((end, path)) = frontier.pop() {
            for (i, a) in self.arrows.iter().enumerate() {
                if a.src == end {
                    let mut p: Vec<usize> = path.clone();
                    p.push(i);
                    out.push(p.clone());
                    frontier.push((a.dst, p));
                }
            }
        }
        out
    }

    pub fn path_end(&self, start: usize, path: &[usize]) -> usize {
        path.last().map(|&a| self.arrows[a].dst).unwrap_or(start)
    }

    /// Same quiver with the given vertices and their incident arrows removed.
    /// Relations touching a removed arrow are dropped.
    pub fn delete_vertices(&self, remove: &[usize]) -> BoundQuiver {
        let keep: Vec<usize> = (0..self.num_vertices()).filter(|v| !remove.contains(v)).collect();
        let pos = |v: usize| keep.iter().position(|&k| k == v);
        let mut arrow_pos = vec![None; self.arrows.len()];
        let mut arrows = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if let (Some(s), Some(d)) = (pos(a.src), pos(a.dst)) {
                arrow_pos[i] = Some(arrows.len());
                arrows.push(Arrow {
                    name: a.name.clone(),
                    src: s,
                    dst: d,
                });
            }
        }
        let relations = self
            .relations
            .iter()
            .filter(|r| r.terms.iter().all(|(_, p)| p.iter().all(|&a| arrow_pos[a].is_some())))
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| (*c, p.iter().map(|&a| arrow_pos[a].unwrap()).collect()))
                    .collect(),
            })
            .collect();
        BoundQuiver {
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            arrows,
            relations,
            field: self.field,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn cycle_rejected() {
        let err = BoundQuiver::new(
            vec![s("1"), s("2")],
            &[(s("a"), s("1"), s("2")), (s("b"), s("2"), s("1"))],
            &[],
            2,
        );
        assert!(matches!(err, Err(Error::InvalidQuiver(_))));
    }

    #[test]
    fn relation_endpoints_checked() {
        let arrows = [
            (s("a"), s("1"), s("2")),
            (s("b"), s("2"), s("3")),
            (s("c"), s("1"), s("3")),
        ];
        let ok = BoundQuiver::new(
            vec![s("1"), s("2"), s("3")],
            &arrows,
            &[vec![(1, vec![s("a"), s("b")]), (-1, vec![s("c")])]],
            3,
        );
        assert!(ok.is_ok());
        let bad = BoundQuiver::new(
            vec![s("1"), s("2"), s("3")],
            &arrows,
            &[vec![(1, vec![s("a")]), (1, vec![s("c")])]],
            3,
        );
        assert!(bad.is_err());
        let not_path = BoundQuiver::new(vec![s("1"), s("2"), s("3")], &arrows, &[vec![(1, vec![s("b"), s("a")])]], 3);
        assert!(not_path.is_err());
    }

    #[test]
    fn unsupported_field() {
        assert_eq!(BoundQuiver::new(vec![s("1")], &[], &[], 7), Err(Error::UnsupportedField(7)));
    }

    #[test]
    fn paths_and_deletion() {
        let q = BoundQuiver::new(
            vec![s("0"), s("1"), s("2")],
            &[(s("a"), s("1"), s("0")), (s("b"), s("2"), s("0"))],
            &[],
            2,
        )
        .unwrap();
        assert_eq!(q.paths_from(1).len(), 2);
        assert_eq!(q.paths_from(0).len(), 1);
        let d = q.delete_vertices(&[1, 2]);
        assert_eq!(d.vertices(), &[s("0")]);
        assert!(d.arrows().is_empty());
    }
}
