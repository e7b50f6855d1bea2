//! JSON shapes of the core types.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major nested
//! arrays. Algebra structure is inferred from block shapes on the way in and
//! re-validated by the regular constructors.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::error::{Error, Result};
use crate::frame::{FrameMap, MeasureSpace};
use crate::linalg::{c, CMat};
use crate::module::{AdjointableOperator, ModuleElement};

type MatrixRepr = Vec<Vec<[f64; 2]>>;

fn matrix_to_repr(m: &CMat) -> MatrixRepr {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

fn matrix_from_repr(rows: &MatrixRepr) -> Result<CMat> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("algebra blocks must be non-empty square matrices".into()));
    }
    if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("matrix entries must be finite".into()));
    }
    Ok(CMat::from_fn(n, n, |i, j| c(rows[i][j][0], rows[i][j][1])))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct AlgebraElementRepr {
    blocks: Vec<MatrixRepr>,
}

impl From<AlgebraElement> for AlgebraElementRepr {
    fn from(a: AlgebraElement) -> Self {
        Self { blocks: a.blocks().iter().map(matrix_to_repr).collect() }
    }
}

impl TryFrom<AlgebraElementRepr> for AlgebraElement {
    type Error = Error;
    fn try_from(r: AlgebraElementRepr) -> Result<Self> {
        let blocks = r.blocks.iter().map(matrix_from_repr).collect::<Result<Vec<_>>>()?;
        let desc = AlgebraDescriptor::new(blocks.iter().map(|b| b.nrows()).collect())?;
        AlgebraElement::from_blocks(&desc, blocks)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ModuleElementRepr {
    d: usize,
    coords: Vec<AlgebraElement>,
}

impl From<ModuleElement> for ModuleElementRepr {
    fn from(f: ModuleElement) -> Self {
        Self { d: f.d(), coords: f.coords().to_vec() }
    }
}

impl TryFrom<ModuleElementRepr> for ModuleElement {
    type Error = Error;
    fn try_from(r: ModuleElementRepr) -> Result<Self> {
        if r.coords.len() != r.d {
            return Err(Error::DimensionMismatch(format!("d = {} but {} coordinates", r.d, r.coords.len())));
        }
        let desc = r
            .coords
            .first()
            .ok_or_else(|| Error::InvalidInput("module element needs d ≥ 1".into()))?
            .descriptor()
            .clone();
        ModuleElement::new(&desc, r.coords)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct OperatorRepr {
    d_in: usize,
    d_out: usize,
    entries: Vec<Vec<AlgebraElement>>,
}

impl From<AdjointableOperator> for OperatorRepr {
    fn from(t: AdjointableOperator) -> Self {
        Self { d_in: t.d_in(), d_out: t.d_out(), entries: t.entries() }
    }
}

impl TryFrom<OperatorRepr> for AdjointableOperator {
    type Error = Error;
    fn try_from(r: OperatorRepr) -> Result<Self> {
        if r.entries.len() != r.d_in || r.entries.iter().any(|row| row.len() != r.d_out) {
            return Err(Error::DimensionMismatch("entries must be a d_in × d_out array".into()));
        }
        let desc = r
            .entries
            .first()
            .and_then(|row| row.first())
            .ok_or_else(|| Error::InvalidInput("operator needs d_in, d_out ≥ 1".into()))?
            .descriptor()
            .clone();
        AdjointableOperator::from_entries(&desc, &r.entries)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct MeasureSpaceRepr {
    weights: Vec<f64>,
}

impl From<MeasureSpace> for MeasureSpaceRepr {
    fn from(s: MeasureSpace) -> Self {
        Self { weights: s.weights().to_vec() }
    }
}

impl TryFrom<MeasureSpaceRepr> for MeasureSpace {
    type Error = Error;
    fn try_from(r: MeasureSpaceRepr) -> Result<Self> {
        MeasureSpace::new(r.weights)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct FrameMapRepr {
    space: MeasureSpace,
    d: usize,
    vectors: Vec<ModuleElement>,
}

impl From<FrameMap> for FrameMapRepr {
    fn from(f: FrameMap) -> Self {
        Self { space: f.space().clone(), d: f.d(), vectors: f.vectors().to_vec() }
    }
}

impl TryFrom<FrameMapRepr> for FrameMap {
    type Error = Error;
    fn try_from(r: FrameMapRepr) -> Result<Self> {
        let desc = r
            .vectors
            .first()
            .ok_or_else(|| Error::InvalidInput("frame needs at least one vector".into()))?
            .descriptor()
            .clone();
        FrameMap::new(&r.space, &desc, r.d, r.vectors)
    }
}
