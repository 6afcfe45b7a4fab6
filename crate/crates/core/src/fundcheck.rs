//! Fundamental-domain and stratified-centralizer checks.
//!
//! A group G acting on a polytope F has stratified centralizers when the
//! stabilizer G_x is constant on the relative interior of every face. Since
//! Fix(g) is an affine subspace, this fails for (g, 𝔉) exactly when relint 𝔉
//! meets Fix(g) without aff 𝔉 ⊆ Fix(g).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::alcove_automorphism_group;
use crate::error::{Error, Result};
use crate::exactlin::{lp_feasible, Constraint, RatMat, RatVec, Rational};
use crate::polytope::{
    alcove, enumerate_vertices, face_lattice, regular_face, volume, Face, HPolytope, HalfSpace, Label, VPolytope,
};
use crate::rootsys::RootSystem;
use crate::weyl::{fundamental_group, simple_reflection, AffineIsometry};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAction {
    pub elements: Vec<AffineIsometry>,
    pub names: Vec<String>,
    /// The region the translates of a fundamental domain should tile.
    pub ambient: HPolytope,
}

impl GroupAction {
    pub fn new(elements: Vec<AffineIsometry>, names: Vec<String>, ambient: HPolytope) -> GroupAction {
        assert_eq!(elements.len(), names.len());
        GroupAction {
            elements,
            names,
            ambient,
        }
    }

    /// Ω acting on 𝒜; element names `1`, `omega_j`.
    pub fn omega(rs: &RootSystem) -> GroupAction {
        let omega = fundamental_group(rs);
        let names = omega
            .labels
            .iter()
            .map(|&j| if j == 0 { "1".to_string() } else { format!("omega{j}") })
            .collect();
        GroupAction::new(omega.elements, names, alcove(rs))
    }

    /// Aut(𝒜) acting on 𝒜; elements named by their permutation of the
    /// affine nodes (equivalently of the alcove vertices).
    pub fn alcove_automorphisms(rs: &RootSystem) -> GroupAction {
        let aut = alcove_automorphism_group(rs);
        let names = aut
            .diagram_auts
            .iter()
            .enumerate()
            .map(|(k, phi)| {
                let tag = aut.generators.iter().find(|g| g.element == k);
                match tag {
                    Some(g) => format!("{} {}", g.name, phi.cycles()),
                    None => phi.cycles(),
                }
            })
            .collect();
        GroupAction::new(aut.elements, names, alcove(rs))
    }

    /// The reflections s_0, …, s_n in the walls of 𝒜. They generate W_aff
    /// and (W_aff)_x is generated by those fixing x.
    pub fn alcove_walls(rs: &RootSystem) -> GroupAction {
        let mut elements = vec![wall_reflection_zero(rs)];
        elements.extend((1..=rs.rank()).map(|i| simple_reflection(rs, i).to_affine()));
        let names = (0..=rs.rank()).map(|k| format!("s{k}")).collect();
        GroupAction::new(elements, names, alcove(rs))
    }

    /// Ω together with the wall reflections; by (W_ext)_x = Ω_x ⋊ (W_aff)_x
    /// this captures W_ext stabilizers.
    pub fn extended(rs: &RootSystem) -> GroupAction {
        let mut g = GroupAction::omega(rs);
        let walls = GroupAction::alcove_walls(rs);
        g.elements.extend(walls.elements);
        g.names.extend(walls.names);
        g
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| {
            self.elements
                .iter()
                .all(|b| self.elements.contains(&a.compose(b)))
        })
    }
}

/// Reflection in H_0: x ↦ x − ((α₀, x) − 1) α₀^∨.
pub fn wall_reflection_zero(rs: &RootSystem) -> AffineIsometry {
    let n = rs.rank();
    let a0 = &rs.highest_root;
    let coroot = a0.scale(&(Rational::from_int(2) / rs.inner(a0, a0)));
    let cov = rs.covector(a0);
    let mut linear = RatMat::identity(n);
    for i in 0..n {
        for j in 0..n {
            linear[(i, j)] -= &coroot[i] * &cov[j];
        }
    }
    AffineIsometry {
        linear,
        translation: coroot,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlap {
    pub element: usize,
    pub name: String,
    /// A point interior to both F and gF.
    pub point: RatVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalDomainReport {
    pub group_order: usize,
    pub disjoint: bool,
    pub overlaps: Vec<Overlap>,
    pub volume: Rational,
    pub ambient_volume: Rational,
    pub covers: bool,
    pub verdict: bool,
}

/// F is a fundamental domain when the translates gF (g ≠ 1) have interiors
/// disjoint from F and |G| · vol F = vol(ambient).
pub fn is_fundamental_domain(f: &HPolytope, g: &GroupAction) -> Result<FundamentalDomainReport> {
    let fv = enumerate_vertices(f)?;
    if let Some(x) = fv.vertices.iter().find(|x| !g.ambient.contains(x)) {
        return Err(Error::NotInside(format!("vertex {x:?} lies outside the ambient region")));
    }
    let interior = f.strict_constraints();
    let overlaps: Vec<Overlap> = g
        .elements
        .par_iter()
        .enumerate()
        .filter(|(_, e)| !e.is_identity())
        .filter_map(|(k, e)| {
            let mut cs = interior.clone();
            cs.extend(f.image(e).strict_constraints());
            lp_feasible(f.dim, &cs).witness().map(|x| Overlap {
                element: k,
                name: g.names[k].clone(),
                point: x.clone(),
            })
        })
        .collect();
    let vol = volume(&fv)?;
    let ambient_volume = volume(&enumerate_vertices(&g.ambient)?)?;
    let covers = &vol * Rational::from_int(g.order() as i64) == ambient_volume;
    let disjoint = overlaps.is_empty();
    Ok(FundamentalDomainReport {
        group_order: g.order(),
        disjoint,
        overlaps,
        volume: vol,
        ambient_volume,
        covers,
        verdict: disjoint && covers,
    })
}

/// Indices of the elements fixing x.
pub fn stabilizer(g: &GroupAction, x: &RatVec) -> Vec<usize> {
    (0..g.order()).filter(|&k| g.elements[k].fixes(x)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtStabilizer {
    /// Labels j of the ω_j fixing x (0 for the identity).
    pub omega: Vec<usize>,
    /// Walls of 𝒜 through x (0 for H_0); their reflections generate
    /// (W_aff)_x.
    pub walls: Vec<usize>,
}

/// (W_ext)_x = Ω_x ⋊ (W_aff)_x for x ∈ 𝒜, without enumerating W_aff.
pub fn ext_stabilizer_decomposition(rs: &RootSystem, x: &RatVec) -> Result<ExtStabilizer> {
    let b = kac_coordinates(rs, x);
    if b.iter().any(Rational::is_negative) {
        return Err(Error::NotInside(format!("point {x:?} is not in the alcove")));
    }
    let omega = fundamental_group(rs);
    Ok(ExtStabilizer {
        omega: omega
            .labels
            .iter()
            .zip(&omega.elements)
            .filter(|(_, g)| g.fixes(x))
            .map(|(&j, _)| j)
            .collect(),
        walls: (0..=rs.rank()).filter(|&k| b[k].is_zero()).collect(),
    })
}

/// [b₀, …, b_n] with b_i = (α_i, x) and b₀ = 1 − (α₀, x).
pub fn kac_coordinates(rs: &RootSystem, x: &RatVec) -> Vec<Rational> {
    let b = rs.coweight_coordinates(x);
    let top = rs.inner(&rs.highest_root, x);
    std::iter::once(Rational::one() - top).chain(b.0).collect()
}

/// Inverse of [`kac_coordinates`] (b₀ is implied).
pub fn from_kac_coordinates(rs: &RootSystem, b: &[Rational]) -> RatVec {
    (1..=rs.rank())
        .fold(RatVec::zeros(rs.rank()), |acc, i| acc.add(&rs.coweight(i).scale(&b[i])))
}

/// Permutation induced on the alcove vertices {0, ϖ_i^∨/m_i}.
pub fn vertex_permutation(rs: &RootSystem, g: &AffineIsometry) -> Option<Vec<usize>> {
    g.permutation_of(&rs.alcove_vertices())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationWitness {
    /// Vertex indices of the face in the enumerated polytope.
    pub face: Vec<usize>,
    pub face_vertices: Vec<RatVec>,
    pub face_dim: usize,
    /// Labels of the half-spaces containing the face.
    pub facets: Vec<String>,
    pub element: usize,
    pub element_name: String,
    /// In relint(face) and fixed by the element.
    pub fixed_point: RatVec,
    /// In relint(face) and moved by the element.
    pub moved_point: RatVec,
}

impl StratificationWitness {
    /// Re-check both points by substitution.
    pub fn verify(&self, g: &GroupAction, f: &VPolytope) -> bool {
        let e = &g.elements[self.element];
        let rows: Vec<_> = f.halfspaces.iter().map(|h| h.row(&f.gram)).collect();
        let face_facets: Vec<usize> = (0..rows.len())
            .filter(|&h| self.face.iter().all(|&v| f.incidence[v][h]))
            .collect();
        let in_relint = |x: &RatVec| {
            rows.iter().enumerate().all(|(h, (a, b))| {
                let v = a.dot(x);
                if face_facets.contains(&h) {
                    v == *b
                } else {
                    v > *b
                }
            })
        };
        e.fixes(&self.fixed_point)
            && !e.fixes(&self.moved_point)
            && in_relint(&self.fixed_point)
            && in_relint(&self.moved_point)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationReport {
    pub claim: String,
    /// True when the centralizers are stratified.
    pub verdict: bool,
    pub faces_checked: usize,
    pub witnesses: Vec<StratificationWitness>,
}

fn centroid(points: &[RatVec]) -> RatVec {
    let sum = points
        .iter()
        .fold(RatVec::zeros(points[0].dim()), |acc, p| acc.add(p));
    sum.scale(&Rational::new(1, points.len() as i64))
}

fn face_witness(
    g: &GroupAction,
    p: &VPolytope,
    rows: &[(RatVec, Rational)],
    face: &Face,
    k: usize,
) -> Option<StratificationWitness> {
    let e = &g.elements[k];
    let pts: Vec<RatVec> = face.vertices.iter().map(|&v| p.vertices[v].clone()).collect();
    let unfixed = pts.iter().find(|x| !e.fixes(x))?;
    let c = centroid(&pts);
    let fixed_point = if e.fixes(&c) {
        c.clone()
    } else {
        let mut cs: Vec<Constraint> = rows
            .iter()
            .enumerate()
            .map(|(h, (a, b))| {
                if face.facets.contains(&h) {
                    Constraint::eq(a.clone(), b.clone())
                } else {
                    Constraint::gt(a.clone(), b.clone())
                }
            })
            .collect();
        let n = p.dim;
        let lin = e.linear.sub(&RatMat::identity(n));
        for i in 0..n {
            cs.push(Constraint::eq(lin.row(i), -&e.translation[i]));
        }
        lp_feasible(n, &cs).witness()?.clone()
    };
    // midpoint of a relative-interior point and a face point stays in relint
    let moved_point = if e.fixes(&c) {
        c.add(unfixed).scale(&Rational::new(1, 2))
    } else {
        c
    };
    Some(StratificationWitness {
        face: face.vertices.clone(),
        face_vertices: pts,
        face_dim: face.dim,
        facets: face
            .facets
            .iter()
            .map(|&h| p.halfspaces[h].label.to_string())
            .collect(),
        element: k,
        element_name: g.names[k].clone(),
        fixed_point,
        moved_point,
    })
}

/// Decide whether `g` has stratified centralizers with respect to the
/// faces of `f`, collecting every failing (face, element) pair.
///
/// For each g the set Q = f ∩ Fix(g) is enumerated in coordinates on
/// Fix(g). Every point of Q lies in the relative interior of exactly one
/// face of Q, and the half-spaces of f tight there are constant on that
/// relative interior, so the faces of f whose relative interior meets
/// Fix(g) are exactly the regular faces of the centroids of the faces of Q.
pub fn stratified_centralizers(
    g: &GroupAction,
    f: &HPolytope,
    claim: &str,
    cap: usize,
) -> Result<StratificationReport> {
    let p = enumerate_vertices(f)?;
    let lattice = face_lattice(&p, cap)?;
    let rows = f.rows();
    let per_element: Vec<Vec<StratificationWitness>> = (0..g.order())
        .into_par_iter()
        .map(|k| {
            if g.elements[k].is_identity() {
                return Ok(Vec::new());
            }
            let mut found: Vec<StratificationWitness> = Vec::new();
            for x in fixed_face_points(&g.elements[k], &rows, cap)? {
                let face = regular_face(&p, &x)?;
                if found.iter().any(|w| w.face == face.vertices) {
                    continue;
                }
                if let Some(w) = witness_at(g, &p, &face, k, x) {
                    found.push(w);
                }
            }
            found.sort_by(|a, b| (a.face_dim, &a.face).cmp(&(b.face_dim, &b.face)));
            Ok(found)
        })
        .collect::<Result<_>>()?;
    let witnesses: Vec<StratificationWitness> = per_element.into_iter().flatten().collect();
    Ok(StratificationReport {
        claim: claim.to_string(),
        verdict: witnesses.is_empty(),
        faces_checked: lattice.len(),
        witnesses,
    })
}

/// One relative-interior point per face of {x : a·x ≥ b} ∩ Fix(e).
fn fixed_face_points(e: &AffineIsometry, rows: &[(RatVec, Rational)], cap: usize) -> Result<Vec<RatVec>> {
    let Some((base, kernel)) = e.fixed_space() else {
        return Ok(Vec::new());
    };
    let d = kernel.len();
    if d == 0 {
        let inside = rows.iter().all(|(a, b)| a.dot(&base) >= *b);
        return Ok(if inside { vec![base] } else { Vec::new() });
    }
    let mut q = HPolytope::new(RatMat::identity(d));
    for (a, b) in rows {
        let normal: RatVec = kernel.iter().map(|k| a.dot(k)).collect();
        let offset = b - a.dot(&base);
        if normal.is_zero() {
            if offset.is_positive() {
                return Ok(Vec::new());
            }
            continue;
        }
        q.push(HalfSpace::ge(normal, offset, Label::Custom(String::new())));
    }
    let qv = enumerate_vertices(&q)?;
    let lift = |y: &RatVec| {
        kernel
            .iter()
            .zip(y.iter())
            .fold(base.clone(), |acc, (k, c)| acc.add(&k.scale(c)))
    };
    Ok(face_lattice(&qv, cap)?
        .faces
        .iter()
        .map(|face| {
            let pts: Vec<RatVec> = face.vertices.iter().map(|&v| qv.vertices[v].clone()).collect();
            lift(&centroid(&pts))
        })
        .collect())
}

/// Witness for a face whose relative interior contains the fixed point
/// `x`, unless the whole face is fixed.
fn witness_at(
    g: &GroupAction,
    p: &VPolytope,
    face: &Face,
    k: usize,
    x: RatVec,
) -> Option<StratificationWitness> {
    let e = &g.elements[k];
    let pts: Vec<RatVec> = face.vertices.iter().map(|&v| p.vertices[v].clone()).collect();
    let unfixed = pts.iter().find(|v| !e.fixes(v))?;
    // (x + v)/2 is in relint (x is) and not fixed (v is not, Fix is affine)
    let moved_point = x.add(unfixed).scale(&Rational::new(1, 2));
    Some(StratificationWitness {
        face: face.vertices.clone(),
        face_vertices: pts,
        face_dim: face.dim,
        facets: face
            .facets
            .iter()
            .map(|&h| p.halfspaces[h].label.to_string())
            .collect(),
        element: k,
        element_name: g.names[k].clone(),
        fixed_point: x,
        moved_point,
    })
}

/// Reference implementation of [`stratified_centralizers`]: one LP per
/// (element, face) pair. Slower; used to cross-check.
pub fn stratified_centralizers_lp(
    g: &GroupAction,
    f: &HPolytope,
    claim: &str,
    cap: usize,
) -> Result<StratificationReport> {
    let p = enumerate_vertices(f)?;
    let lattice = face_lattice(&p, cap)?;
    let rows = f.rows();
    let pairs: Vec<(usize, usize)> = (0..g.order())
        .filter(|&k| !g.elements[k].is_identity())
        .flat_map(|k| (0..lattice.len()).map(move |i| (k, i)))
        .collect();
    let witnesses: Vec<StratificationWitness> = pairs
        .par_iter()
        .filter_map(|&(k, i)| face_witness(g, &p, &rows, &lattice.faces[i], k))
        .collect();
    Ok(StratificationReport {
        claim: claim.to_string(),
        verdict: witnesses.is_empty(),
        faces_checked: lattice.len(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{komrakov_premet, DEFAULT_FACE_CAP};

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_name(s).unwrap()
    }

    #[test]
    fn kac_coordinates_basic() {
        let a3 = rs("A3");
        let b = kac_coordinates(&a3, &RatVec::zeros(3));
        assert_eq!(b, vec![Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()]);
        let x = a3.coweight_sum(&[1, 2, 3]).scale(&Rational::new(1, 4));
        assert!(kac_coordinates(&a3, &x).iter().all(|v| *v == Rational::new(1, 4)));
        assert_eq!(from_kac_coordinates(&a3, &kac_coordinates(&a3, &x)), x);
    }

    #[test]
    fn wall_zero_reflection_fixes_top_wall() {
        let b3 = rs("B3");
        let s0 = wall_reflection_zero(&b3);
        assert!(s0.compose(&s0).is_identity());
        for (k, v) in b3.alcove_vertices().iter().enumerate() {
            assert_eq!(s0.fixes(v), k != 0);
        }
    }

    #[test]
    fn omega_on_kp_a2() {
        let a2 = rs("A2");
        let g = GroupAction::omega(&a2);
        let report = is_fundamental_domain(&komrakov_premet(&a2), &g).unwrap();
        assert!(report.verdict);
        let strat = stratified_centralizers(&g, &komrakov_premet(&a2), "", DEFAULT_FACE_CAP).unwrap();
        assert!(strat.verdict);
    }

    #[test]
    fn stabilizer_of_origin_is_trivial() {
        for name in ["A4", "D5", "E6", "E7"] {
            let r = rs(name);
            let g = GroupAction::omega(&r);
            assert_eq!(stabilizer(&g, &RatVec::zeros(r.rank())), vec![0]);
        }
    }

    #[test]
    fn ext_stabilizer_at_origin() {
        let d4 = rs("D4");
        let s = ext_stabilizer_decomposition(&d4, &RatVec::zeros(4)).unwrap();
        assert_eq!(s.omega, vec![0]);
        assert_eq!(s.walls, vec![1, 2, 3, 4]);
        assert!(ext_stabilizer_decomposition(&d4, &RatVec::from_ints(&[5, 0, 0, 0])).is_err());
    }
}
