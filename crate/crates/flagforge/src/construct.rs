//! Greedy Turán-graph constructions of flag complexes.
//!
//! Every construction keeps a closed-form ledger of face counts and then
//! recounts the finished graph by brute force; a disagreement is reported as
//! [`ConstructError::SelfCheck`].

use crate::bounds::{flag_lower_bound, kk_shadow, BoundValue};
use crate::combinatorics::{binom, binom_floor, multipartite_count, turan_count, turan_floor};
use crate::complex::{clique_f_vector, f_to_h, plus_construction, FaceVector, HVector, VertexColoredGraph};
use crate::error::Error;
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum ConstructError {
    Invalid(Error),
    /// The construction ran out of budget; the plan records where.
    Failed(Box<ConstructionPlan>),
    /// Two-face or fixed-dimension construction overshot `f_{p-1}`.
    Overshoot(Box<TwoFacePlan>),
    /// Brute-force recount disagreed with the ledger. Never expected.
    SelfCheck { expected: FaceVector, got: FaceVector },
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::Invalid(e) => write!(f, "{e}"),
            ConstructError::Failed(plan) => match &plan.outcome {
                Outcome::Failure(fl) => write!(f, "{}", fl.message),
                Outcome::Success => write!(f, "construction failed"),
            },
            ConstructError::Overshoot(plan) => {
                write!(f, "f_{} overshoot {}", plan.p - 1, plan.overshoot.unwrap_or(0))
            }
            ConstructError::SelfCheck { expected, got } => {
                write!(f, "self-check failed: ledger {:?}, recount {:?}", expected.0, got.0)
            }
        }
    }
}

impl std::error::Error for ConstructError {}

impl From<Error> for ConstructError {
    fn from(e: Error) -> Self {
        ConstructError::Invalid(e)
    }
}

type CResult<T> = std::result::Result<T, ConstructError>;

fn bad<T>(msg: impl Into<String>) -> CResult<T> {
    Err(ConstructError::Invalid(Error::InvalidArgument(msg.into())))
}

fn to_u64(v: &BigUint) -> CResult<u64> {
    v.to_u64().ok_or_else(|| ConstructError::Invalid(Error::Overflow(v.to_string())))
}

/// One vertex added outside the Turán base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraVertex {
    /// Link inside the base is a Turán graph on `n` vertices.
    pub n: i64,
    /// Largest overlap the budget allows; absent for the first extra vertex.
    pub q: Option<i64>,
    /// Common base neighbors with the previous extra vertex, or -1 if the two
    /// are not adjacent.
    pub p: i64,
    /// Budget left after this vertex.
    pub m: u64,
    pub color: u32,
    /// Base neighbors per color.
    pub link_sizes: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingCheck>,
}

/// `lhs >= rhs` gates making an extra vertex adjacent to its predecessor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    /// The link selector found vertices realizing the overlap.
    pub realized: bool,
}

/// Link choice for one extra vertex: indices into the base's color classes.
#[derive(Clone, Debug)]
struct Link {
    color: u32,
    picks: Vec<Vec<usize>>,
    adjacent_to_prev: bool,
}

fn split(n: i64, parts: i64) -> (i64, usize) {
    if parts <= 0 {
        return (0, 0);
    }
    (n / parts, (n % parts) as usize)
}

struct Quota {
    small: i64,
    big: usize,
    smalls: usize,
}

impl Quota {
    fn new(n: i64, parts: usize) -> Self {
        let (small, big) = split(n, parts as i64);
        Quota { small, big, smalls: parts - big }
    }

    fn options(&self) -> Vec<(i64, bool)> {
        let mut v = Vec::new();
        if self.big > 0 {
            v.push((self.small + 1, true));
        }
        if self.smalls > 0 {
            v.push((self.small, false));
        }
        v
    }

    fn take(&mut self, big: bool, delta: isize) {
        if big {
            self.big = (self.big as isize - delta) as usize;
        } else {
            self.smalls = (self.smalls as isize - delta) as usize;
        }
    }
}

/// Per-color link sizes `c` and overlaps `t` for a new extra vertex that
/// avoids color `e`. `prev` is the previous vertex's picks and color when the
/// two should share a Turán graph on `overlap` vertices.
fn assign(sizes: &[u64], e: usize, n: i64, prev: Option<(&[Vec<usize>], usize)>, overlap: i64) -> Option<(Vec<i64>, Vec<i64>)> {
    let r = sizes.len();
    let colors: Vec<usize> = (0..r).filter(|&c| c != e).collect();
    let mut cq = Quota::new(n, colors.len());
    let shared = if prev.is_some() { r.saturating_sub(2) } else { 0 };
    let mut tq = Quota::new(overlap.max(0), shared);
    let mut c = vec![0i64; r];
    let mut t = vec![0i64; r];

    fn go(
        idx: usize,
        colors: &[usize],
        sizes: &[u64],
        prev: Option<(&[Vec<usize>], usize)>,
        cq: &mut Quota,
        tq: &mut Quota,
        c: &mut [i64],
        t: &mut [i64],
    ) -> bool {
        if idx == colors.len() {
            return true;
        }
        let col = colors[idx];
        let cap = sizes[col] as i64;
        let in_shared = prev.is_some_and(|(_, pe)| pe != col);
        for (cv, cbig) in cq.options() {
            if cv > cap {
                continue;
            }
            cq.take(cbig, 1);
            c[col] = cv;
            if in_shared {
                let a = prev.unwrap().0[col].len() as i64;
                for (tv, tbig) in tq.options() {
                    if tv <= cv && tv <= a && cv - tv <= cap - a {
                        tq.take(tbig, 1);
                        t[col] = tv;
                        if go(idx + 1, colors, sizes, prev, cq, tq, c, t) {
                            return true;
                        }
                        tq.take(tbig, -1);
                    }
                }
            } else if go(idx + 1, colors, sizes, prev, cq, tq, c, t) {
                return true;
            }
            cq.take(cbig, -1);
        }
        c[col] = 0;
        false
    }

    if go(0, &colors, sizes, prev, &mut cq, &mut tq, &mut c, &mut t) {
        Some((c, t))
    } else {
        None
    }
}

/// Pick the base vertices for an extra vertex. Unpaired vertices take the
/// first vertices of each color; a paired vertex reuses the last `t` picks of
/// its predecessor and then the first unused vertices.
fn select_link(sizes: &[u64], n: i64, prev: Option<&Link>, overlap: i64) -> Option<Link> {
    let r = sizes.len();
    for e in (0..r).rev() {
        let paired = prev.filter(|p| p.color as usize != e);
        if prev.is_some() && paired.is_none() {
            continue;
        }
        let prev_arg = paired.map(|p| (p.picks.as_slice(), p.color as usize));
        let Some((c, t)) = assign(sizes, e, n, prev_arg, overlap) else {
            continue;
        };
        let mut picks = vec![Vec::new(); r];
        for col in 0..r {
            if col == e {
                continue;
            }
            match paired {
                Some(p) if p.color as usize != col => {
                    let a = &p.picks[col];
                    let tv = t[col] as usize;
                    let mut chosen: Vec<usize> = a[a.len() - tv..].to_vec();
                    let fresh = (0..sizes[col] as usize).filter(|i| !a.contains(i));
                    chosen.extend(fresh.take((c[col] - t[col]) as usize));
                    chosen.sort_unstable();
                    picks[col] = chosen;
                }
                _ => picks[col] = (0..c[col] as usize).collect(),
            }
        }
        return Some(Link { color: e as u32, picks, adjacent_to_prev: paired.is_some() });
    }
    None
}

/// Sum of all parts except the two smallest.
fn without_two_smallest(sizes: &[u64]) -> i64 {
    let mut s: Vec<u64> = sizes.to_vec();
    s.sort_unstable();
    s.iter().skip(2).sum::<u64>() as i64
}

/// Extra vertices for a base with `sizes.len()` colors that must add `m0`
/// faces on `k` vertices. Links are Turán graphs on `r - 1` colors, shared
/// parts on `r - 2` colors.
fn plan_extras(sizes: &[u64], k: i64, m0: u64, pairing: bool) -> CResult<(Vec<ExtraVertex>, Vec<Link>)> {
    let r = sizes.len() as i64;
    let mut extras: Vec<ExtraVertex> = Vec::new();
    let mut links: Vec<Link> = Vec::new();
    let mut m_prev = BigUint::from(m0);
    while !m_prev.is_zero() {
        let n = turan_floor(&m_prev, k - 1, r - 1);
        let rem = &m_prev - turan_count(n, k - 1, r - 1);
        let first = extras.is_empty();
        let q = if first {
            None
        } else if !pairing || rem.is_zero() || k < 3 {
            Some(-1)
        } else {
            Some(turan_floor(&rem, k - 2, r - 2))
        };
        let mut p = -1;
        let mut check = None;
        let mut link = None;
        if let (Some(qv), Some(prev)) = (q, extras.last()) {
            if qv >= 1 {
                let lhs = without_two_smallest(sizes) + qv;
                let rhs = prev.n - prev.n / (r - 1) + n - n / (r - 1);
                let holds = lhs >= rhs;
                let mut realized = false;
                if holds {
                    if let Some(l) = select_link(sizes, n, links.last(), qv) {
                        realized = true;
                        p = qv;
                        link = Some(l);
                    }
                }
                check = Some(PairingCheck { lhs, rhs, holds, realized });
            }
        }
        let link = match link {
            Some(l) => l,
            None => select_link(sizes, n, None, 0).ok_or_else(|| {
                ConstructError::Invalid(Error::InvalidArgument(format!(
                    "no room for a link of {n} vertices in base {sizes:?}"
                )))
            })?,
        };
        m_prev = rem - turan_count(p, k - 2, r - 2);
        extras.push(ExtraVertex {
            n,
            q,
            p,
            m: to_u64(&m_prev)?,
            color: link.color,
            link_sizes: link.picks.iter().map(|v| v.len() as u64).collect(),
            pairing: check,
        });
        links.push(link);
    }
    Ok((extras, links))
}

/// Faces on `card` vertices contributed by the extra vertices.
fn extras_faces(extras: &[ExtraVertex], card: i64, r: i64) -> BigUint {
    extras
        .iter()
        .map(|x| turan_count(x.n, card - 1, r - 1) + turan_count(x.p, card - 2, r - 2))
        .sum()
}

/// Add the extra vertices to `g`; `base[c]` lists the global ids of color `c`.
fn attach_extras(g: &mut VertexColoredGraph, base: &[Vec<usize>], links: &[Link]) {
    let mut prev: Option<usize> = None;
    for l in links {
        let v = g.add_vertex(l.color);
        for (col, idx) in l.picks.iter().enumerate() {
            for &i in idx {
                g.add_edge(v, base[col][i]);
            }
        }
        if l.adjacent_to_prev {
            g.add_edge(v, prev.expect("paired vertex has a predecessor"));
        }
        prev = Some(v);
    }
}

fn check_recount(g: &VertexColoredGraph, expected: &FaceVector) -> CResult<()> {
    let got = clique_f_vector(g, expected.d().max(1));
    let want = expected.clone().trimmed();
    if got != want {
        return Err(ConstructError::SelfCheck { expected: want, got });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Two face numbers

/// Trace of the two-face or fixed-dimension construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFacePlan {
    pub k: i64,
    pub p: i64,
    pub m: u64,
    pub q: u64,
    /// Number of colors for the fixed-dimension variant.
    pub r: Option<i64>,
    pub base_parts: Vec<u64>,
    pub extras: Vec<ExtraVertex>,
    /// `f_{p-1}` before pendant vertices.
    pub f_low_before: u64,
    pub pendants: u64,
    pub overshoot: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct TwoFaceBuild {
    pub graph: VertexColoredGraph,
    pub plan: TwoFacePlan,
}

/// Clique on `n_0` vertices, extra vertices on `n_i` base vertices, then
/// pendant vertices on `p - 1` base vertices until `f_{p-1} = q`.
pub fn construct_two_face(k: i64, p: i64, m: u64, q: u64) -> CResult<TwoFaceBuild> {
    if !(k > p && p >= 1) || m == 0 || q == 0 {
        return bad("need k > p >= 1, m >= 1, q >= 1");
    }
    let n0 = binom_floor(&BigUint::from(m), k);
    let mut rem = BigUint::from(m) - binom(n0, k);
    let mut g = VertexColoredGraph::new(n0 as u32);
    for c in 0..n0 {
        g.add_vertex(c as u32);
    }
    for u in 0..n0 as usize {
        for v in u + 1..n0 as usize {
            g.add_edge(u, v);
        }
    }
    let mut low = binom(n0, p);
    let mut extras = Vec::new();
    while !rem.is_zero() {
        let n = binom_floor(&rem, k - 1);
        rem -= binom(n, k - 1);
        low += binom(n, p - 1);
        // the base vertex n is outside the link, so its color is free
        let v = g.add_vertex(n as u32);
        for u in 0..n as usize {
            g.add_edge(v, u);
        }
        extras.push(ExtraVertex {
            n,
            q: None,
            p: -1,
            m: to_u64(&rem)?,
            color: n as u32,
            link_sizes: vec![n as u64],
            pairing: None,
        });
    }
    let mut plan = TwoFacePlan {
        k,
        p,
        m,
        q,
        r: None,
        base_parts: vec![n0 as u64],
        extras,
        f_low_before: to_u64(&low)?,
        pendants: 0,
        overshoot: None,
    };
    if plan.f_low_before > q {
        plan.overshoot = Some(plan.f_low_before - q);
        return Err(ConstructError::Overshoot(Box::new(plan)));
    }
    plan.pendants = q - plan.f_low_before;
    for _ in 0..plan.pendants {
        let v = g.add_vertex((p - 1) as u32);
        for u in 0..(p - 1) as usize {
            g.add_edge(v, u);
        }
    }
    let f = clique_f_vector(&g, k as usize);
    let get = |i: i64| f.0.get(i as usize).cloned().unwrap_or_default();
    if get(k) != BigUint::from(m) || get(p) != BigUint::from(q) {
        let mut expected = f.clone();
        expected.0[k as usize] = BigUint::from(m);
        expected.0[p as usize] = BigUint::from(q);
        return Err(ConstructError::SelfCheck { expected, got: f });
    }
    Ok(TwoFaceBuild { graph: g, plan })
}

/// Turán base `T(n_0, r)` and extra vertices whose links are Turán graphs
/// on `r - 1` colors; with `pairing`, consecutive extra vertices may be made
/// adjacent with a shared Turán graph on `r - 2` colors.
pub fn construct_dim(r: i64, k: i64, p: i64, m: u64, q: u64, pairing: bool) -> CResult<TwoFaceBuild> {
    if !(r >= k && k > p && p >= 1) || m == 0 || q == 0 {
        return bad("need r >= k > p >= 1, m >= 1, q >= 1");
    }
    let n0 = turan_floor(&BigUint::from(m), k, r);
    let parts = crate::combinatorics::turan_parts(n0 as u64, r as u64).sizes;
    let m0 = to_u64(&(BigUint::from(m) - turan_count(n0, k, r)))?;
    let (extras, links) = plan_extras(&parts, k, m0, pairing)?;
    let low = turan_count(n0, p, r) + extras_faces(&extras, p, r);
    let mut g = crate::complex::build_multipartite(&parts);
    let base = color_classes(&parts, 0);
    attach_extras(&mut g, &base, &links);
    let mut plan = TwoFacePlan {
        k,
        p,
        m,
        q,
        r: Some(r),
        base_parts: parts,
        extras,
        f_low_before: to_u64(&low)?,
        pendants: 0,
        overshoot: None,
    };
    if plan.f_low_before > q {
        plan.overshoot = Some(plan.f_low_before - q);
        return Err(ConstructError::Overshoot(Box::new(plan)));
    }
    plan.pendants = q - plan.f_low_before;
    for _ in 0..plan.pendants {
        let v = g.add_vertex((p - 1) as u32);
        for col in base.iter().take((p - 1) as usize) {
            g.add_edge(v, col[0]);
        }
    }
    let f = clique_f_vector(&g, k as usize);
    let get = |i: i64| f.0.get(i as usize).cloned().unwrap_or_default();
    if get(k) != BigUint::from(m) || get(p) != BigUint::from(q) {
        let mut expected = f.clone();
        expected.0[k as usize] = BigUint::from(m);
        expected.0[p as usize] = BigUint::from(q);
        return Err(ConstructError::SelfCheck { expected, got: f });
    }
    Ok(TwoFaceBuild { graph: g, plan })
}

fn color_classes(parts: &[u64], offset: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut next = offset;
    for &s in parts {
        out.push((next..next + s as usize).collect());
        next += s as usize;
    }
    out
}

// ---------------------------------------------------------------------------
// Full face vectors

/// One stage: the complex `Gamma^j` of dimension `j - 1`, glued onto the
/// previous stages along the first `j` colors of the previous base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub dim: usize,
    /// Number of `dim`-cliques `Gamma^dim` must contain.
    pub target: u64,
    pub base_parts: Vec<u64>,
    pub n0: u64,
    pub m0: u64,
    pub extras: Vec<ExtraVertex>,
    pub glue_parts: Vec<u64>,
    pub glue_size: u64,
    /// Faces of the glue subgraph, `(1, f_0, ...)`.
    #[serde(with = "crate::bigjson::vec")]
    pub glue_faces: Vec<BigUint>,
    #[serde(with = "crate::bigjson::vec")]
    pub f_gamma: Vec<BigUint>,
    /// Face vector of the union so far.
    #[serde(with = "crate::bigjson::vec")]
    pub f_delta: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Stage whose union already used too many faces.
    pub stage: usize,
    /// Failing entry is `f_{face_dim}`.
    pub face_dim: i64,
    pub used: u64,
    pub allowed: u64,
    pub deficit: u64,
    pub message: String,
    /// Necessary bounds the target itself violates, if any.
    pub bound_violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Failure(Failure),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionPlan {
    pub target: Vec<u64>,
    /// Seed part sizes per stage, indexed by `dim - 1`.
    pub seeds: Vec<Option<Vec<u64>>>,
    pub stages: Vec<Stage>,
    /// Vertices added by the last stage that are isolated.
    pub isolated_vertices: u64,
    pub outcome: Outcome,
}

impl ConstructionPlan {
    pub fn stage(&self, dim: usize) -> Option<&Stage> {
        self.stages.iter().find(|s| s.dim == dim)
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub graph: VertexColoredGraph,
    pub plan: ConstructionPlan,
}

fn water_fill(start: Vec<u64>, j: usize, target: &BigUint) -> Vec<u64> {
    let mut parts = start;
    loop {
        let (i, _) = parts.iter().enumerate().min_by_key(|&(i, &s)| (s, i)).expect("j >= 1");
        parts[i] += 1;
        if multipartite_count(&parts, j as i64) > *target {
            parts[i] -= 1;
            return parts;
        }
    }
}

fn faces_of_parts(parts: &[u64], d: usize) -> Vec<BigUint> {
    (0..=d as i64).map(|k| multipartite_count(parts, k)).collect()
}

fn diagnose(target: &[u64], dim: i64) -> Vec<String> {
    let d = target.len() as i64 - 1;
    let mut out = Vec::new();
    let p = dim + 1;
    for k in p + 1..=d {
        let m = target[k as usize];
        let c = BigUint::from(target[p as usize]);
        let (bound, name) = if k >= 3 {
            match flag_lower_bound(m, k, p) {
                Ok(rep) => match rep.value {
                    BoundValue::Exact(v) => (v, "flag two-branch"),
                    BoundValue::Real(_) => continue,
                },
                Err(_) => continue,
            }
        } else {
            match kk_shadow(m, k, p) {
                Ok(v) => (v, "Kruskal-Katona"),
                Err(_) => continue,
            }
        };
        if c < bound {
            out.push(format!("f_{} = {} is below the {} bound {} implied by f_{} = {}", p - 1, c, name, bound, k - 1, m));
        }
    }
    out
}

/// Build a flag complex with face vector `target = (1, c_1, ..., c_d)`.
///
/// Stage `d` starts from a Turán graph (or the seed parts for that stage),
/// each lower stage `j` adds just enough `j`-cliques and is glued along the
/// previous base minus its last color.
pub fn construct_main(target: &[u64], seeds: &[Option<Vec<u64>>]) -> CResult<Construction> {
    if target.len() < 2 || target[0] != 1 || target[1..].iter().any(|&c| c == 0) {
        return bad("target must be (1, c_1, ..., c_d) with every c_i >= 1");
    }
    let d = target.len() - 1;
    let mut seeds_full: Vec<Option<Vec<u64>>> = seeds.to_vec();
    seeds_full.resize(d, None);
    let mut plan = ConstructionPlan {
        target: target.to_vec(),
        seeds: seeds_full.clone(),
        stages: Vec::new(),
        isolated_vertices: 0,
        outcome: Outcome::Success,
    };
    let mut g = VertexColoredGraph::new(d as u32);
    let mut f_delta = vec![BigUint::zero(); d + 1];
    f_delta[0] = BigUint::from(1u32);
    let mut prev_base: Vec<Vec<usize>> = Vec::new();
    let mut prev_parts: Vec<u64> = Vec::new();

    for j in (1..=d).rev() {
        let (glue_parts, stage_target) = if j == d {
            (vec![0u64; j], BigUint::from(target[d]))
        } else {
            let used = to_u64(&f_delta[j])?;
            let allowed = target[j];
            if used > allowed {
                let deficit = used - allowed;
                plan.outcome = Outcome::Failure(Failure {
                    stage: j + 1,
                    face_dim: j as i64 - 1,
                    used,
                    allowed,
                    deficit,
                    message: format!("f_{} deficit {} at stage {}", j - 1, deficit, j + 1),
                    bound_violations: diagnose(target, j as i64 - 1),
                });
                return Err(ConstructError::Failed(Box::new(plan)));
            }
            let glue = prev_parts[..j].to_vec();
            let t = BigUint::from(allowed - used) + multipartite_count(&glue, j as i64);
            (glue, t)
        };

        let mut start = glue_parts.clone();
        if let Some(seed) = &seeds_full[j - 1] {
            if seed.len() == j {
                let merged: Vec<u64> = start.iter().zip(seed).map(|(a, b)| *a.max(b)).collect();
                if multipartite_count(&merged, j as i64) <= stage_target {
                    start = merged;
                }
            }
        }
        let base_parts = water_fill(start, j, &stage_target);
        if base_parts.iter().zip(&glue_parts).any(|(b, g)| b < g) {
            return bad("glue subgraph does not fit in the stage base");
        }
        let m0 = to_u64(&(&stage_target - multipartite_count(&base_parts, j as i64)))?;
        let (extras, links) = if j >= 2 { plan_extras(&base_parts, j as i64, m0, true)? } else { (Vec::new(), Vec::new()) };
        debug_assert!(j >= 2 || m0 == 0);

        // base vertices: glue vertices first within each color, then fresh ones
        let mut base: Vec<Vec<usize>> = Vec::new();
        for (c, &size) in base_parts.iter().enumerate() {
            let mut ids: Vec<usize> = if j < d { prev_base[c].clone() } else { Vec::new() };
            while ids.len() < size as usize {
                ids.push(g.add_vertex(c as u32));
            }
            base.push(ids);
        }
        for a in 0..j {
            for b in a + 1..j {
                for &u in &base[a] {
                    for &v in &base[b] {
                        g.add_edge(u, v);
                    }
                }
            }
        }
        attach_extras(&mut g, &base, &links);

        let glue_faces = faces_of_parts(&glue_parts, d);
        let mut f_gamma = faces_of_parts(&base_parts, d);
        for (card, fg) in f_gamma.iter_mut().enumerate().skip(1) {
            *fg += extras_faces(&extras, card as i64, j as i64);
        }
        for card in 0..=d {
            f_delta[card] = &f_delta[card] + &f_gamma[card] - &glue_faces[card];
        }
        if j < d {
            f_delta[0] = BigUint::from(1u32);
        }
        if j == 1 {
            plan.isolated_vertices = base_parts[0] - glue_parts[0];
        }
        plan.stages.push(Stage {
            dim: j,
            target: to_u64(&stage_target)?,
            n0: base_parts.iter().sum(),
            base_parts: base_parts.clone(),
            m0,
            extras,
            glue_size: glue_parts.iter().sum(),
            glue_parts,
            glue_faces,
            f_gamma,
            f_delta: f_delta.clone(),
        });
        prev_base = base;
        prev_parts = base_parts;
    }

    let ledger = FaceVector(f_delta.clone());
    let want = FaceVector::from_u64(target);
    if ledger != want {
        return Err(ConstructError::SelfCheck { expected: want, got: ledger });
    }
    check_recount(&g, &want)?;
    Ok(Construction { graph: g, plan })
}

// ---------------------------------------------------------------------------
// Part allocation

/// Real part sizes `a[k-1][j-1]` (color `j` at stage `k`) and the integer
/// seeds derived from them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Allocation {
    pub a: Vec<Vec<f64>>,
    pub seeds: Vec<Option<Vec<u64>>>,
    /// `(k, r)` when stage `r` was split into `k` large and `r - k` small parts.
    pub repaired: Option<(usize, usize)>,
    /// Every monotonicity condition holds.
    pub monotone: bool,
    pub notes: Vec<String>,
}

fn esym(v: &[f64], k: usize) -> f64 {
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &x in v {
        for j in (1..=k).rev() {
            e[j] += e[j - 1] * x;
        }
    }
    e[k]
}

/// Contribution of stage `u` (1-based) to `c_j`: color sets of size `j`
/// whose largest color is `u`.
fn contribution(a: &[Vec<f64>], u: usize, j: usize) -> f64 {
    let row = &a[u - 1];
    if j == 0 || j > u {
        return 0.0;
    }
    row[u - 1] * esym(&row[..u - 1], j - 1)
}

fn violation(a: &[Vec<f64>], i: usize, d: usize) -> bool {
    let tol = 1e-9;
    for k in i + 1..=d {
        for jj in 0..i {
            if a[i - 1][jj] + tol < a[k - 1][jj] {
                return true;
            }
        }
    }
    false
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-9 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Equal parts per stage, top down; when a lower stage would need more
/// vertices per color than a higher one, split the stage above it into `k`
/// large and one small part so both budgets are met exactly.
pub fn allocate_parts(target: &[u64]) -> CResult<Allocation> {
    if target.len() < 2 || target[0] != 1 {
        return bad("target must start with 1");
    }
    let d = target.len() - 1;
    let c: Vec<f64> = target.iter().map(|&x| x as f64).collect();
    let mut a: Vec<Vec<f64>> = (1..=d).map(|k| vec![0.0; k]).collect();
    let mut notes = Vec::new();
    let mut repaired = None;
    let mut seeds: Vec<Option<Vec<u64>>> = vec![None; d];

    let fill_equal = |a: &mut Vec<Vec<f64>>, i: usize| -> bool {
        let higher: f64 = (i + 1..=d).map(|u| contribution(a, u, i)).sum();
        let need = c[i] - higher;
        let x = if need > 0.0 { need.powf(1.0 / i as f64) } else { 0.0 };
        a[i - 1] = vec![x; i];
        need >= 0.0
    };

    let mut i = d;
    while i >= 1 {
        if !fill_equal(&mut a, i) {
            notes.push(format!("stage {i}: higher stages already exceed c_{i}"));
        }
        if violation(&a, i, d) && repaired.is_none() && i + 2 <= d {
            let k = i + 1;
            let r = k + 1;
            let hr: f64 = (r + 1..=d).map(|u| contribution(&a, u, r)).sum();
            let hk: f64 = (r + 1..=d).map(|u| contribution(&a, u, k)).sum();
            let big_r = c[r] - hr;
            let big_k = c[k] - hk;
            let kf = k as f64;
            let f = |x: f64| x.powi(k as i32) + kf * big_r / x - big_k;
            let lo = big_r.max(0.0).powf(1.0 / (kf + 1.0));
            let hi = big_k.max(0.0).powf(1.0 / kf);
            if big_r > 0.0 && f(lo) < 0.0 && f(hi) > 0.0 {
                let x = bisect(f, lo, hi);
                let y = big_r / x.powi(k as i32);
                let mut row = vec![x; k];
                row.push(y);
                a[r - 1] = row;
                a[k - 1] = vec![x; k];
                repaired = Some((k, r));
                let (xi, yi) = round_two_block(x, y, k, big_r, big_k);
                let mut seed = vec![xi; k];
                seed.push(yi);
                seeds[r - 1] = Some(seed);
                seeds[k - 1] = Some(vec![xi; k]);
                notes.push(format!("stage {r}: split into {k} parts of {x:.6} and one of {y:.6}"));
                // redo everything below the repaired stages
                i = k - 1;
                continue;
            }
            notes.push(format!("stage {i}: no two-block repair found"));
        }
        i -= 1;
    }
    let monotone = (1..=d).all(|i| !violation(&a, i, d))
        && a.iter().all(|row| row.windows(2).all(|w| w[0] + 1e-9 >= w[1]));
    if !monotone {
        notes.push("allocation is not monotone; heuristic gave up".into());
    }
    Ok(Allocation { a, seeds, repaired, monotone, notes })
}

/// Integer `(X, Y)` near `(x, y)`: exact solutions of `X^k Y = R` and
/// `X^k + k X^(k-1) Y = K` first, then the closest with `X^k Y <= R`.
fn round_two_block(x: f64, y: f64, k: usize, big_r: f64, big_k: f64) -> (u64, u64) {
    let cand = |v: f64| -> Vec<u64> {
        let f = v.floor() as i64;
        (f - 1..=f + 2).filter(|&t| t >= 0).map(|t| t as u64).collect()
    };
    let mut best: Option<(f64, u64, u64)> = None;
    for xi in cand(x) {
        for yi in cand(y) {
            let xf = xi as f64;
            let yf = yi as f64;
            let top = xf.powi(k as i32) * yf;
            let mid = xf.powi(k as i32) + k as f64 * xf.powi(k as i32 - 1) * yf;
            if top > big_r + 1e-9 {
                continue;
            }
            let err = (big_r - top).abs() + (big_k - mid).abs();
            if best.is_none_or(|(e, _, _)| err < e) {
                best = Some((err, xi, yi));
            }
        }
    }
    best.map(|(_, a, b)| (a, b)).unwrap_or((x.round() as u64, y.round() as u64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AllocMode {
    Balanced,
    Auto,
    /// Explicit part sizes for the top stage.
    Parts(Vec<u64>),
}

/// `construct_main` with the seeds chosen by `mode`. `Auto` tries the
/// allocation heuristic first and falls back to balanced parts.
pub fn construct(target: &[u64], mode: &AllocMode) -> CResult<Construction> {
    match mode {
        AllocMode::Balanced => construct_main(target, &[]),
        AllocMode::Parts(p) => {
            let d = target.len().saturating_sub(1);
            if p.len() != d {
                return bad(format!("need {d} part sizes, got {}", p.len()));
            }
            let mut seeds = vec![None; d];
            seeds[d - 1] = Some(p.clone());
            construct_main(target, &seeds)
        }
        AllocMode::Auto => {
            let alloc = allocate_parts(target)?;
            if alloc.repaired.is_none() {
                return construct_main(target, &[]);
            }
            match construct_main(target, &alloc.seeds) {
                Ok(c) => Ok(c),
                Err(ConstructError::Failed(first)) => match construct_main(target, &[]) {
                    Ok(c) => Ok(c),
                    Err(ConstructError::Failed(_)) => Err(ConstructError::Failed(first)),
                    Err(e) => Err(e),
                },
                Err(e) => Err(e),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// h-vectors

#[derive(Clone, Debug)]
pub struct HvecBuild {
    /// The complex with face vector `(1, h_1, ..., h_d)`.
    pub inner: VertexColoredGraph,
    /// The plus construction applied to `inner`.
    pub graph: VertexColoredGraph,
    pub plan: Option<ConstructionPlan>,
}

/// Flag complex with the given h-vector: build a complex whose face vector
/// is the h-vector, then add one vertex per color.
pub fn construct_hvec(h: &[u64]) -> CResult<HvecBuild> {
    if h.len() < 2 || h[0] != 1 {
        return bad("h-vector must be (1, h_1, ..., h_d) with d >= 1");
    }
    let d = h.len() - 1;
    // trailing zeros only mean fewer colors are used
    let used = h.iter().rposition(|&x| x != 0).unwrap_or(0);
    let (mut inner, plan) = if used == 0 {
        (VertexColoredGraph::new(d as u32), None)
    } else {
        let c = construct(&h[..=used], &AllocMode::Auto)?;
        (c.graph, Some(c.plan))
    };
    inner.widen_palette(d as u32);
    let graph = plus_construction(&inner)?;
    let f = clique_f_vector(&graph, d);
    let mut f_full = f.0.clone();
    f_full.resize(d + 1, BigUint::zero());
    let got = f_to_h(&FaceVector(f_full));
    let want = HVector(h.iter().map(|&x| BigInt::from(x)).collect());
    if got != want {
        return Err(ConstructError::SelfCheck { expected: FaceVector::from_u64(h), got: f });
    }
    Ok(HvecBuild { inner, graph, plan })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_and_assign() {
        assert_eq!(split(5, 2), (2, 1));
        let (c, _) = assign(&[13, 12, 12], 2, 22, None, 0).unwrap();
        assert_eq!(c, vec![11, 11, 0]);
    }

    #[test]
    fn water_fill_matches_turan() {
        let parts = water_fill(vec![0, 0, 0], 3, &BigUint::from(2000u32));
        assert_eq!(parts, vec![13, 12, 12]);
        let parts = water_fill(vec![13, 12], 2, &BigUint::from(672u32));
        assert_eq!(parts, vec![26, 25]);
    }
}
