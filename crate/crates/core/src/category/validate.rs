use std::collections::HashMap;
use std::fmt;

use super::RawCategory;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateObject(String),
    DuplicateMorphism(String),
    UnknownEndpoint { morphism: String, endpoint: String },
    MissingIdentity(String),
    IdentityForUnknownObject(String),
    IdentityTyping { object: String, morphism: String },
    UnknownComposeEntry(String),
    NotComposable { g: String, f: String },
    DuplicateComposite { g: String, f: String },
    CompositeTyping { g: String, f: String, gf: String },
    MissingComposite { g: String, f: String },
    LeftIdentity(String),
    RightIdentity(String),
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicateObject(o) => write!(fm, "duplicate object {o}"),
            DuplicateMorphism(m) => write!(fm, "duplicate morphism {m}"),
            UnknownEndpoint { morphism, endpoint } => write!(fm, "{morphism} has unknown endpoint {endpoint}"),
            MissingIdentity(o) => write!(fm, "no identity for {o}"),
            IdentityForUnknownObject(o) => write!(fm, "identity given for unknown object {o}"),
            IdentityTyping { object, morphism } => write!(fm, "identity {morphism} of {object} is not an endomorphism of it"),
            UnknownComposeEntry(m) => write!(fm, "composition table mentions unknown morphism {m}"),
            NotComposable { g, f } => write!(fm, "{g}∘{f} assigned but the pair is not composable"),
            DuplicateComposite { g, f } => write!(fm, "{g}∘{f} assigned twice"),
            CompositeTyping { g, f, gf } => write!(fm, "{g}∘{f} = {gf} has the wrong source or target"),
            MissingComposite { g, f } => write!(fm, "{g}∘{f} is not assigned"),
            LeftIdentity(f) => write!(fm, "id∘{f} ≠ {f}"),
            RightIdentity(f) => write!(fm, "{f}∘id ≠ {f}"),
            Associativity { h, g, f } => write!(fm, "{h}∘({g}∘{f}) ≠ ({h}∘{g})∘{f}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn typing_violations(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| matches!(v, Violation::CompositeTyping { .. } | Violation::IdentityTyping { .. }))
            .count()
    }
}

/// Lists every violated category law. Laws are only checked where the table
/// entries they mention exist and are well typed, so one bad entry is reported once.
pub fn validate_category(raw: &RawCategory) -> ValidationReport {
    let mut out = Vec::new();
    let mut obj: HashMap<&str, usize> = HashMap::new();
    for o in &raw.objects {
        if obj.insert(o.as_str(), obj.len()).is_some() {
            out.push(Violation::DuplicateObject(o.clone()));
        }
    }
    let mut mor: HashMap<&str, usize> = HashMap::new();
    let mut ends: Vec<Option<(usize, usize)>> = Vec::new();
    for m in &raw.morphisms {
        if mor.contains_key(m.id.as_str()) {
            out.push(Violation::DuplicateMorphism(m.id.clone()));
            continue;
        }
        let s = obj.get(m.src.as_str()).copied();
        let t = obj.get(m.tgt.as_str()).copied();
        for (e, v) in [(&m.src, s), (&m.tgt, t)] {
            if v.is_none() {
                out.push(Violation::UnknownEndpoint { morphism: m.id.clone(), endpoint: e.clone() });
            }
        }
        mor.insert(m.id.as_str(), ends.len());
        ends.push(s.zip(t));
    }
    let names: Vec<&str> = {
        let mut v = vec![""; ends.len()];
        for (k, &i) in &mor {
            v[i] = k;
        }
        v
    };
    let mut identity: Vec<Option<usize>> = vec![None; obj.len()];
    for (o, m) in &raw.identity {
        let Some(&a) = obj.get(o.as_str()) else {
            out.push(Violation::IdentityForUnknownObject(o.clone()));
            continue;
        };
        match mor.get(m.as_str()) {
            Some(&i) if ends[i] == Some((a, a)) => identity[a] = Some(i),
            _ => out.push(Violation::IdentityTyping { object: o.clone(), morphism: m.clone() }),
        }
    }
    for (o, &a) in &obj {
        if identity[a].is_none() && !raw.identity.contains_key(*o) {
            out.push(Violation::MissingIdentity(o.to_string()));
        }
    }
    // composition table, keeping only well-typed entries
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    let mut assigned: HashMap<(usize, usize), ()> = HashMap::new();
    for [g, f, h] in &raw.compose {
        let ids = [g, f, h].map(|x| mor.get(x.as_str()).copied());
        if let Some(pos) = ids.iter().position(|x| x.is_none()) {
            out.push(Violation::UnknownComposeEntry([g, f, h][pos].clone()));
            continue;
        }
        let [gi, fi, hi] = ids.map(|x| x.unwrap());
        let (Some((gs, gt)), Some((fs, ft)), Some((hs, ht))) = (ends[gi], ends[fi], ends[hi]) else {
            continue;
        };
        if ft != gs {
            out.push(Violation::NotComposable { g: g.clone(), f: f.clone() });
            continue;
        }
        if assigned.insert((gi, fi), ()).is_some() {
            out.push(Violation::DuplicateComposite { g: g.clone(), f: f.clone() });
            continue;
        }
        if hs != fs || ht != gt {
            out.push(Violation::CompositeTyping { g: g.clone(), f: f.clone(), gf: h.clone() });
            continue;
        }
        table.insert((gi, fi), hi);
    }
    let n = ends.len();
    for f in 0..n {
        let Some((_, ft)) = ends[f] else { continue };
        for g in 0..n {
            if let Some((gs, _)) = ends[g] {
                if gs == ft && !assigned.contains_key(&(g, f)) {
                    out.push(Violation::MissingComposite { g: names[g].into(), f: names[f].into() });
                }
            }
        }
    }
    for f in 0..n {
        let Some((fs, ft)) = ends[f] else { continue };
        if let Some(i) = identity[ft] {
            if let Some(&h) = table.get(&(i, f)) {
                if h != f {
                    out.push(Violation::LeftIdentity(names[f].into()));
                }
            }
        }
        if let Some(i) = identity[fs] {
            if let Some(&h) = table.get(&(f, i)) {
                if h != f {
                    out.push(Violation::RightIdentity(names[f].into()));
                }
            }
        }
    }
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); obj.len()];
    for (i, e) in ends.iter().enumerate() {
        if let Some((s, _)) = e {
            by_src[*s].push(i);
        }
    }
    for f in 0..n {
        let Some((_, ft)) = ends[f] else { continue };
        for &g in &by_src[ft] {
            let Some(&gf) = table.get(&(g, f)) else { continue };
            let gt = ends[g].unwrap().1;
            for &h in &by_src[gt] {
                let (Some(&hg), Some(&left)) = (table.get(&(h, g)), table.get(&(h, gf))) else { continue };
                let Some(&right) = table.get(&(hg, f)) else { continue };
                if left != right {
                    out.push(Violation::Associativity {
                        h: names[h].into(),
                        g: names[g].into(),
                        f: names[f].into(),
                    });
                }
            }
        }
    }
    ValidationReport { violations: out }
}
