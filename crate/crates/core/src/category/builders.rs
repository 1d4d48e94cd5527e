use std::collections::HashMap;

use super::{FinCategory, Morphism};
use crate::error::{Error, Result};

fn id_name(o: &str) -> String {
    format!("id_{o}")
}

impl FinCategory {
    /// One object, one morphism.
    pub fn terminal() -> FinCategory {
        FinCategory::discrete(&["*"])
    }

    pub fn empty() -> FinCategory {
        FinCategory::discrete(&[] as &[&str])
    }

    pub fn discrete<S: AsRef<str>>(names: &[S]) -> FinCategory {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism { id: id_name(o), src: i, tgt: i })
            .collect();
        let identity = (0..objects.len()).collect();
        FinCategory::from_parts(objects, morphisms, identity, |g, _| g)
    }

    /// `n` objects named 0..n-1 and no non-identity morphisms.
    pub fn discrete_n(n: usize) -> FinCategory {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        FinCategory::discrete(&names)
    }

    /// The chain 0 → 1 → ... → n-1.
    pub fn chain(n: usize) -> FinCategory {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FinCategory::preorder(&names, &pairs)
    }

    /// The preorder generated by `pairs` (reflexive-transitive closure).
    /// Identities are named `id_a` and the other arrows `a->b`.
    pub fn preorder<S: AsRef<str>>(names: &[S], pairs: &[(usize, usize)]) -> FinCategory {
        let n = names.len();
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        FinCategory::from_relation(names, |a, b| le[a][b])
    }

    /// The preorder with a ≤ b iff `le(a, b)`. The relation must be a preorder.
    pub fn from_relation<S: AsRef<str>>(names: &[S], le: impl Fn(usize, usize) -> bool) -> FinCategory {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut index = vec![usize::MAX; n * n];
        let mut identity = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if le(a, b) {
                    index[a * n + b] = morphisms.len();
                    if a == b {
                        identity[a] = morphisms.len();
                    }
                    let id = if a == b { id_name(&objects[a]) } else { format!("{}->{}", objects[a], objects[b]) };
                    morphisms.push(Morphism { id, src: a, tgt: b });
                }
            }
        }
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
        FinCategory::from_parts(objects, morphisms, identity, |g, f| index[ends[f].0 * n + ends[g].1])
    }

    /// The free category on an acyclic directed graph. Paths are named by
    /// their edges in composition order, `g.f` meaning g after f.
    pub fn free_on_graph<S: AsRef<str>>(
        names: &[S],
        edges: &[(&str, usize, usize)],
    ) -> Result<FinCategory> {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = objects.len();
        // paths as edge lists (first edge first)
        let mut paths: Vec<(Vec<usize>, usize, usize)> = (0..n).map(|a| (Vec::new(), a, a)).collect();
        let mut frontier: Vec<usize> = (0..n).collect();
        let mut steps = 0;
        while !frontier.is_empty() {
            steps += 1;
            if steps > n + 1 {
                return Err(Error::InvalidCategory("graph has a cycle".into()));
            }
            let mut next = Vec::new();
            for &p in &frontier {
                let (path, s, t) = paths[p].clone();
                for (e, &(_, es, et)) in edges.iter().enumerate() {
                    if es == t {
                        let mut q = path.clone();
                        q.push(e);
                        next.push(paths.len());
                        paths.push((q, s, et));
                    }
                }
            }
            frontier = next;
        }
        let mut lookup: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut morphisms = Vec::new();
        let mut identity = vec![0; n];
        for (i, (path, s, t)) in paths.iter().enumerate() {
            let id = if path.is_empty() {
                identity[*s] = i;
                id_name(&objects[*s])
            } else {
                path.iter().rev().map(|&e| edges[e].0).collect::<Vec<_>>().join(".")
            };
            morphisms.push(Morphism { id, src: *s, tgt: *t });
            lookup.insert(path.clone(), i);
        }
        let ids = identity.clone();
        Ok(FinCategory::from_parts(objects, morphisms, identity, |g, f| {
            let mut q = paths[f].0.clone();
            q.extend_from_slice(&paths[g].0);
            if q.is_empty() {
                return ids[paths[f].1];
            }
            lookup[&q]
        }))
    }

    /// One-object category from a monoid multiplication table; element 0 is the unit.
    pub fn monoid<S: AsRef<str>>(names: &[S], mul: &[Vec<usize>]) -> FinCategory {
        let objects = vec!["*".to_string()];
        let morphisms =
            names.iter().map(|s| Morphism { id: s.as_ref().to_string(), src: 0, tgt: 0 }).collect();
        FinCategory::from_parts(objects, morphisms, vec![0], |g, f| mul[g][f])
    }
}
