use super::{lift, multiply_cycle, verify, FlowAssignment, FlowError};
use crate::dihedral::{DihedralElement, GroupContext};
use crate::graph::{delete_edge, y_delta, CycleRef, Edge, EmbeddedGraph, Vertex, YDelta};

/// Build a nowhere-identity bounded flow on `g` from a nowhere-zero flow on
/// `g` minus `removed`, where `cycle` is a contractible simple cycle through
/// `removed`.
///
/// `h` lives on the single component returned by [`delete_edge`]. A flow mod
/// `n` is first lifted to integer shifts; a rotation-only bounded flow is
/// used as is. The flow is extended by the identity on `removed` and the
/// cycle is then multiplied by the reflection with shift 0.
pub fn removal_construction(
    g: &EmbeddedGraph,
    removed: Edge,
    cycle: &CycleRef,
    h: &FlowAssignment,
) -> Result<FlowAssignment, FlowError> {
    g.check_edge(removed)?;
    if !cycle.edges().contains(&removed) {
        return Err(FlowError::InvalidFlow(format!(
            "cycle does not use edge {removed}"
        )));
    }
    let mut pieces = delete_edge(g, removed)?;
    if pieces.len() != 1 {
        return Err(FlowError::StructureViolation(format!(
            "edge {removed} is a bridge"
        )));
    }
    let minor = pieces.remove(0);
    if !verify(&minor.graph, h)?.is_valid_nowhere_identity() {
        return Err(FlowError::InvalidFlow(
            "not a nowhere-zero flow on the minor".into(),
        ));
    }
    let integral = match h.ctx() {
        GroupContext::CyclicRotationsMod(_) => lift(&minor.graph, h)?.ok_or_else(|| {
            FlowError::StructureViolation("flow mod n has no integer lift".into())
        })?,
        GroupContext::DihedralBounded(_) if h.is_rotation_only() => h.clone(),
        other => {
            return Err(FlowError::ContextMismatch {
                expected: "Zn or rotation-only Dlt",
                found: other,
            })
        }
    };
    let n = integral.ctx().modulus().expect("finite context");
    let ctx = GroupContext::DihedralBounded(n);
    let mut f = FlowAssignment::new(ctx, vec![DihedralElement::IDENTITY; g.edge_count()])?;
    for (j, &orig) in minor.edge_origin.iter().enumerate() {
        let head = 2 * orig + integral.head(j) % 2;
        f.set(orig, head, integral.value(j))?;
    }
    let out = multiply_cycle(g, &f, cycle, DihedralElement::reflection(0))?;
    if !verify(g, &out)?.is_valid_nowhere_identity() {
        return Err(FlowError::StructureViolation(
            "construction did not yield a flow".into(),
        ));
    }
    Ok(out)
}

/// Replace cubic vertex `v` by a triangle and extend a nowhere-identity
/// bounded flow over it.
///
/// With three rotations at `v` the triangle carries reflections only. With
/// one rotation and two reflections the triangle edge opposite the rotation
/// gets the reflection with the first admissible shift among
/// `0, 1, -1, 2, -2, ...` and the other two get rotations.
pub fn extend_over_triangle(
    g: &EmbeddedGraph,
    f: &FlowAssignment,
    v: Vertex,
) -> Result<(YDelta, FlowAssignment), FlowError> {
    let GroupContext::DihedralBounded(n) = f.ctx() else {
        return Err(FlowError::ContextMismatch {
            expected: "Dlt",
            found: f.ctx(),
        });
    };
    if !verify(g, f)?.is_valid_nowhere_identity() {
        return Err(FlowError::InvalidFlow("not a nowhere-identity flow".into()));
    }
    let yd = y_delta(g, v)?;
    let seen: Vec<DihedralElement> = g.rotation(v).iter().map(|&d| f.contribution(d)).collect();
    let mut heads: Vec<usize> = (0..g.edge_count()).map(|e| f.head(e)).collect();
    heads.extend(yd.triangle.iter().map(|&t| 2 * t));
    let mut values = f.values().to_vec();
    values.resize(g.edge_count() + 3, DihedralElement::IDENTITY);
    let t = yd.triangle;
    let rotations: Vec<usize> = (0..3).filter(|&i| seen[i].is_rotation()).collect();
    match rotations.as_slice() {
        [_, _, _] => {
            values[t[0]] = DihedralElement::reflection(0);
            values[t[1]] = DihedralElement::reflection(-seen[1].shift);
            values[t[2]] = DihedralElement::reflection(seen[0].shift);
        }
        &[j] => {
            let a = seen[(j + 1) % 3].shift;
            let b = seen[(j + 2) % 3].shift;
            let fits = |x: i64| x != 0 && x.unsigned_abs() < n;
            let z = (0..n as i64)
                .flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
                .find(|&z| fits(z - a) && fits(z - b))
                .ok_or(FlowError::NoFeasibleShift(v))?;
            values[t[(j + 1) % 3]] = DihedralElement::reflection(z);
            values[t[j]] = DihedralElement::rotation(z - a);
            values[t[(j + 2) % 3]] = DihedralElement::rotation(z - b);
        }
        _ => {
            return Err(FlowError::StructureViolation(format!(
                "vertex {v} carries {} rotations",
                rotations.len()
            )))
        }
    }
    let out = FlowAssignment::with_heads(f.ctx(), heads, values)?;
    if !verify(&yd.graph, &out)?.is_valid_nowhere_identity() {
        return Err(FlowError::StructureViolation(
            "triangle extension failed".into(),
        ));
    }
    Ok((yd, out))
}
