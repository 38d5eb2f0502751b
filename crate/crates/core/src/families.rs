//! Named graph families, their compact string form, and closed-form values
//! of kappa, `dim_f`, `dim_f^k` and `dim^k` where known.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::frac::check_k_range;
use crate::graph::{Graph, Vertex};
use crate::rational::Rational;
use crate::tree::spider_fkdim;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Complete,
    Edgeless,
}

/// One blown-up base vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Group {
    pub size: usize,
    pub kind: GroupKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    /// `n` counts the hub and the `n - 1` rim vertices.
    Wheel(usize),
    Petersen,
    /// Cycle lengths glued at one cut vertex.
    Bouquet(Vec<usize>),
    CompleteMultipartite(Vec<usize>),
    Grid(usize, usize),
    /// Leg lengths around one center.
    Spider(Vec<usize>),
    /// Three legs of `s` vertices hung on every vertex of `base`.
    Remark { base: Box<FamilySpec>, s: usize },
    /// Every base vertex replaced by a clique or an independent set.
    Blowup { base: Box<FamilySpec>, groups: Vec<Group> },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidFamily(msg.into())
}

fn sorted(values: &[usize]) -> Vec<usize> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v
}

fn int(value: usize) -> Rational {
    Rational::from_integer(value.into())
}

fn range_err(k: &Rational, range: &str) -> Error {
    Error::OutsideFormulaRange { k: k.to_string(), range: range.to_string() }
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Path(n) if *n < 2 => Err(invalid("path needs n >= 2")),
            FamilySpec::Cycle(n) if *n < 3 => Err(invalid("cycle needs n >= 3")),
            FamilySpec::Wheel(n) if *n < 5 => Err(invalid("wheel needs n >= 5")),
            FamilySpec::Bouquet(lens) if lens.len() < 2 || lens.iter().any(|&l| l < 3) => {
                Err(invalid("bouquet needs at least two cycles, each of length >= 3"))
            }
            FamilySpec::CompleteMultipartite(parts)
                if parts.len() < 2 || parts.contains(&0) =>
            {
                Err(invalid("multipartite needs at least two non-empty parts"))
            }
            FamilySpec::Grid(s, t) if *s < 2 || *t < 2 => Err(invalid("grid needs s, t >= 2")),
            FamilySpec::Spider(legs) if legs.len() < 3 || legs.contains(&0) => {
                Err(invalid("spider needs at least three legs, each of length >= 1"))
            }
            FamilySpec::Remark { base, s } => {
                if *s == 0 {
                    return Err(invalid("remark construction needs s >= 1"));
                }
                base.validate()
            }
            FamilySpec::Blowup { base, groups } => {
                base.validate()?;
                let n = base.vertex_count();
                if groups.len() != n {
                    return Err(invalid(format!(
                        "blowup lists {} groups for a base on {n} vertices",
                        groups.len()
                    )));
                }
                if groups.iter().any(|g| g.size == 0) {
                    return Err(invalid("blowup groups must be non-empty"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            FamilySpec::Path(n) | FamilySpec::Cycle(n) | FamilySpec::Wheel(n) => *n,
            FamilySpec::Petersen => 10,
            FamilySpec::Bouquet(lens) => 1 + lens.iter().map(|l| l - 1).sum::<usize>(),
            FamilySpec::CompleteMultipartite(parts) => parts.iter().sum(),
            FamilySpec::Grid(s, t) => s * t,
            FamilySpec::Spider(legs) => 1 + legs.iter().sum::<usize>(),
            FamilySpec::Remark { base, s } => base.vertex_count() * (1 + 3 * s),
            FamilySpec::Blowup { groups, .. } => groups.iter().map(|g| g.size).sum(),
        }
    }

    fn blowup_all_large(groups: &[Group]) -> Result<()> {
        if groups.iter().any(|g| g.size < 2) {
            return Err(Error::Unsupported(
                "closed forms for blowups need every group of size >= 2".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Wheel(n) => write!(f, "wheel:{n}"),
            FamilySpec::Petersen => write!(f, "petersen"),
            FamilySpec::Bouquet(l) => write!(f, "bouquet:{}", list(l)),
            FamilySpec::CompleteMultipartite(p) => write!(f, "multipartite:{}", list(p)),
            FamilySpec::Grid(s, t) => write!(f, "grid:{s}x{t}"),
            FamilySpec::Spider(l) => write!(f, "spider:{}", list(l)),
            FamilySpec::Remark { base, s } => write!(f, "remark:{base},s={s}"),
            FamilySpec::Blowup { base, groups } => {
                let sizes: Vec<String> = groups
                    .iter()
                    .map(|g| {
                        let tag = match g.kind {
                            GroupKind::Complete => 'K',
                            GroupKind::Edgeless => 'E',
                        };
                        format!("{}{tag}", g.size)
                    })
                    .collect();
                write!(f, "blowup:{base},sizes={}", sizes.join(","))
            }
        }
    }
}

fn parse_count(text: &str, what: &str) -> Result<usize> {
    text.trim()
        .parse()
        .map_err(|_| invalid(format!("{what}: {text:?} is not a non-negative integer")))
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>> {
    text.split(',').map(|t| parse_count(t, what)).collect()
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, rest) = match text.split_once(':') {
            Some((kind, rest)) => (kind, Some(rest)),
            None => (text, None),
        };
        let arg = |what: &str| rest.ok_or_else(|| invalid(format!("{what} needs parameters")));
        let spec = match kind.to_ascii_lowercase().as_str() {
            "path" => FamilySpec::Path(parse_count(arg("path")?, "path")?),
            "cycle" => FamilySpec::Cycle(parse_count(arg("cycle")?, "cycle")?),
            "wheel" => FamilySpec::Wheel(parse_count(arg("wheel")?, "wheel")?),
            "petersen" => {
                if rest.is_some() {
                    return Err(invalid("petersen takes no parameters"));
                }
                FamilySpec::Petersen
            }
            "bouquet" => FamilySpec::Bouquet(parse_list(arg("bouquet")?, "bouquet")?),
            "multipartite" => {
                FamilySpec::CompleteMultipartite(parse_list(arg("multipartite")?, "multipartite")?)
            }
            "grid" => {
                let body = arg("grid")?;
                let (s, t) = body
                    .split_once(['x', 'X'])
                    .ok_or_else(|| invalid(format!("grid expects SxT, got {body:?}")))?;
                FamilySpec::Grid(parse_count(s, "grid")?, parse_count(t, "grid")?)
            }
            "spider" => FamilySpec::Spider(parse_list(arg("spider")?, "spider")?),
            "remark" => {
                let body = arg("remark")?;
                let cut = body
                    .rfind(",s=")
                    .ok_or_else(|| invalid("remark expects BASE,s=N"))?;
                FamilySpec::Remark {
                    base: Box::new(body[..cut].parse()?),
                    s: parse_count(&body[cut + 3..], "remark s")?,
                }
            }
            "blowup" => {
                let body = arg("blowup")?;
                let cut = body
                    .rfind(",sizes=")
                    .ok_or_else(|| invalid("blowup expects BASE,sizes=..."))?;
                let groups = body[cut + 7..]
                    .split(',')
                    .map(|tok| {
                        let tok = tok.trim();
                        let (size, kind) = match tok.char_indices().last() {
                            Some((i, 'K' | 'k')) => (&tok[..i], GroupKind::Complete),
                            Some((i, 'E' | 'e')) => (&tok[..i], GroupKind::Edgeless),
                            _ => return Err(invalid(format!("group {tok:?} must end in K or E"))),
                        };
                        Ok(Group { size: parse_count(size, "blowup size")?, kind })
                    })
                    .collect::<Result<Vec<_>>>()?;
                FamilySpec::Blowup { base: Box::new(body[..cut].parse()?), groups }
            }
            other => return Err(invalid(format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Builds the family member with its documented vertex numbering.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.vertex_count();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    match spec {
        FamilySpec::Path(n) => edges.extend((1..*n).map(|i| (i - 1, i))),
        FamilySpec::Cycle(n) => edges.extend((0..*n).map(|i| (i, (i + 1) % n))),
        FamilySpec::Wheel(n) => {
            let rim = n - 1;
            edges.extend((0..rim).map(|i| (i, (i + 1) % rim)));
            edges.extend((0..rim).map(|i| (i, rim)));
        }
        FamilySpec::Petersen => {
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i + 5, (i + 2) % 5 + 5));
                edges.push((i, i + 5));
            }
        }
        FamilySpec::Bouquet(lens) => {
            let mut next = 1;
            for len in sorted(lens) {
                let first = next;
                edges.push((0, first));
                for v in first + 1..first + len - 1 {
                    edges.push((v - 1, v));
                }
                next = first + len - 1;
                edges.push((next - 1, 0));
            }
        }
        FamilySpec::CompleteMultipartite(parts) => {
            let mut owner = Vec::with_capacity(n);
            for (p, &size) in parts.iter().enumerate() {
                owner.extend(std::iter::repeat_n(p, size));
            }
            for u in 0..n {
                edges.extend((u + 1..n).filter(|&v| owner[u] != owner[v]).map(|v| (u, v)));
            }
        }
        FamilySpec::Grid(s, t) => {
            for i in 0..*s {
                for j in 0..*t {
                    let v = i * t + j;
                    if j + 1 < *t {
                        edges.push((v, v + 1));
                    }
                    if i + 1 < *s {
                        edges.push((v, v + t));
                    }
                }
            }
        }
        FamilySpec::Spider(legs) => {
            let mut next = 1;
            for len in sorted(legs) {
                edges.push((0, next));
                for v in next + 1..next + len {
                    edges.push((v - 1, v));
                }
                next += len;
            }
        }
        FamilySpec::Remark { base, s } => {
            let h = generate(base)?;
            edges.extend(h.edges());
            let mut next = h.vertex_count();
            for u in 0..h.vertex_count() {
                for _leg in 0..3 {
                    edges.push((u, next));
                    for v in next + 1..next + s {
                        edges.push((v - 1, v));
                    }
                    next += s;
                }
            }
        }
        FamilySpec::Blowup { base, groups } => {
            let h = generate(base)?;
            let mut start = Vec::with_capacity(groups.len());
            let mut offset = 0;
            for g in groups {
                start.push(offset);
                offset += g.size;
            }
            let members = |i: usize| start[i]..start[i] + groups[i].size;
            for (i, g) in groups.iter().enumerate() {
                if g.kind == GroupKind::Complete {
                    for u in members(i) {
                        edges.extend((u + 1..start[i] + g.size).map(|v| (u, v)));
                    }
                }
            }
            for (a, b) in h.edges() {
                for u in members(a) {
                    edges.extend(members(b).map(|v| (u, v)));
                }
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Kappa as given by the family's closed form.
pub fn closed_form_kappa(spec: &FamilySpec) -> Result<usize> {
    spec.validate()?;
    Ok(match spec {
        FamilySpec::Path(2) => 2,
        FamilySpec::Path(n) => n - 1,
        FamilySpec::Cycle(n) if n % 2 == 0 => n - 2,
        FamilySpec::Cycle(n) => n - 1,
        FamilySpec::Wheel(5) => 2,
        FamilySpec::Wheel(_) => 4,
        FamilySpec::Petersen => 6,
        FamilySpec::Bouquet(lens) => {
            let c1 = sorted(lens)[0];
            if c1 % 2 == 1 {
                c1 - 1
            } else {
                c1 - 2
            }
        }
        FamilySpec::CompleteMultipartite(_) => 2,
        FamilySpec::Grid(s, t) => s + t - 2,
        FamilySpec::Spider(legs) => {
            let l = sorted(legs);
            l[0] + l[1]
        }
        FamilySpec::Remark { s, .. } => 2 * s,
        FamilySpec::Blowup { .. } => {
            return Err(Error::Unsupported("no closed-form kappa for blowups".into()))
        }
    })
}

/// `dim_f^k` as given by the family's closed form, on the range where the
/// formula is stated.
pub fn closed_form_fkdim(spec: &FamilySpec, k: &Rational) -> Result<Rational> {
    spec.validate()?;
    let two = int(2);
    if let FamilySpec::Blowup { groups, .. } = spec {
        FamilySpec::blowup_all_large(groups)?;
        if *k < Rational::one() || *k > two {
            return Err(range_err(k, "[1, 2]"));
        }
        return Ok(k * int(spec.vertex_count()) / two);
    }
    let kappa = closed_form_kappa(spec)?;
    if *k < Rational::one() || *k > int(kappa) {
        return Err(range_err(k, &format!("[1, {kappa}]")));
    }
    Ok(match spec {
        FamilySpec::Path(n) => {
            if *k <= two {
                k.clone()
            } else {
                &two + (k - &two) * int(n - 2) / int(n - 3)
            }
        }
        FamilySpec::Cycle(n) => k * int(*n) / int(kappa),
        FamilySpec::Wheel(5) => k * two,
        FamilySpec::Wheel(6) => k * int(3) / two,
        FamilySpec::Wheel(n) => k * int(n - 1) / int(4),
        FamilySpec::Petersen => k * int(5) / int(3),
        FamilySpec::Bouquet(lens) => k * int(lens.len()),
        FamilySpec::CompleteMultipartite(parts) => {
            let n = spec.vertex_count();
            if parts.iter().filter(|&&p| p == 1).count() == 1 {
                k * int(n - 1) / two
            } else {
                k * int(n) / two
            }
        }
        FamilySpec::Grid(..) => k * two,
        FamilySpec::Spider(legs) => spider_fkdim(legs, k),
        FamilySpec::Remark { base, .. } => k * int(3 * base.vertex_count()) / two,
        FamilySpec::Blowup { .. } => unreachable!("handled above"),
    })
}

/// `dim^k` where the family has an integer closed form (grids and the
/// three-leg construction).
pub fn closed_form_kdim(spec: &FamilySpec, k: usize) -> Result<usize> {
    spec.validate()?;
    match spec {
        FamilySpec::Grid(..) | FamilySpec::Remark { .. } => {}
        other => {
            return Err(Error::Unsupported(format!("no closed-form dim^k for {other}")));
        }
    }
    check_k_range(&int(k), closed_form_kappa(spec)?)?;
    Ok(match spec {
        FamilySpec::Grid(..) => 2 * k,
        FamilySpec::Remark { base, .. } => {
            let n = base.vertex_count();
            if k.is_multiple_of(2) {
                3 * k * n / 2
            } else {
                (3 * k + 1) * n / 2
            }
        }
        _ => unreachable!("filtered above"),
    })
}

/// `dim_f` as given by the family's closed form.
pub fn closed_form_fdim(spec: &FamilySpec) -> Result<Rational> {
    closed_form_fkdim(spec, &Rational::one())
}

/// Random tree on `n` vertices. Each new vertex extends the previous one with
/// probability 1/2, otherwise hangs off a uniform earlier vertex, which
/// yields long legs as well as bushy parts.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = StdRng::seed_from_u64(seed);
    let edges: Vec<(Vertex, Vertex)> = (1..n)
        .map(|v| {
            let parent = if rng.gen_bool(0.5) { v - 1 } else { rng.gen_range(0..v) };
            (parent, v)
        })
        .collect();
    Graph::from_edges(n.max(1), edges).expect("tree edges are valid")
}

/// Random connected graph: a random tree plus up to `extra` random chords.
pub fn random_connected_graph(n: usize, extra: usize, seed: u64) -> Graph {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut edges = std::collections::BTreeSet::new();
    for v in 1..n {
        edges.insert((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(n.max(1), edges).expect("edges are valid")
}
