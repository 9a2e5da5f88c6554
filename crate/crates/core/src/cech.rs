//! The two-row Cech double complex of the weighted projective fan and its
//! spectral sequence.
//!
//! For `-1 <= p <= n` the column `p` is indexed by subsets `I` of
//! `{0, ..., n}` with `|I| = n - p`:
//!
//! ```text
//! A^{p,1} = sum_{|I| = n-p} Z^{|I|}       A^{p,0} = sum_{|I| = n-p} Z^n
//! ```
//!
//! The vertical map on the `I` block has rows `v_i` for `i in I`. The
//! horizontal maps restrict from `I` to `I` minus its `k`-th smallest
//! element with sign `(-1)^k`; on the top row that restriction drops the
//! coordinate of the removed element. Squares commute and both rows are
//! exact, so the horizontal-filtration spectral sequence has
//! `E1 = H(d_v)`, `E2 = H(d1)` and `d2: E2^{p,1} -> E2^{p+2,0}` is an
//! isomorphism. `E2^{0,1}` is the Zariski Brauer group.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::intlin::{homology, kernel_basis, preimage, solve_with, smith_normal_form, FgAbelianGroup, GroupHom, IntMatrix, PresentedGroup};
use crate::weights::WeightVector;

#[derive(Clone, Debug)]
pub struct DoubleComplex {
    n: usize,
    rays: IntMatrix,
    // indexed by p + 1
    subsets: Vec<Vec<Vec<usize>>>,
    subset_index: Vec<HashMap<Vec<usize>, usize>>,
    vertical: Vec<IntMatrix>,
    // [q][p + 1] : A^{p,q} -> A^{p+1,q} for p in -1..=n-1
    horizontal: [Vec<IntMatrix>; 2],
}

fn sign(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

impl DoubleComplex {
    pub fn new(fan: &Fan) -> Result<Self> {
        Self::from_rays(fan.ray_matrix())
    }

    /// Builds the complex from any `(n+1) x n` ray matrix.
    pub fn from_rays(rays: &IntMatrix) -> Result<Self> {
        let n = rays.cols();
        if rays.rows() != n + 1 || n == 0 {
            return Err(Error::invalid(format!(
                "ray matrix must be (n+1) x n with n >= 1, got {}x{}",
                rays.rows(),
                rays.cols()
            )));
        }
        let subsets: Vec<Vec<Vec<usize>>> = (-1..=n as i32)
            .map(|p| (0..=n).combinations((n as i32 - p) as usize).collect())
            .collect_vec();
        // combinations(.., n+1) yields [0..=n] once; combinations(.., 0) yields []
        let subset_index = subsets
            .iter()
            .map(|col| col.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect())
            .collect();

        let vertical = subsets
            .iter()
            .enumerate()
            .map(|(pi, col)| {
                let size = n + 1 - pi;
                let mut m = IntMatrix::zeros(col.len() * size, col.len() * n);
                for (k, s) in col.iter().enumerate() {
                    m.set_block(k * size, k * n, &rays.select_rows(s));
                }
                m
            })
            .collect();

        let mut dc = DoubleComplex {
            n,
            rays: rays.clone(),
            subsets,
            subset_index,
            vertical,
            horizontal: [Vec::new(), Vec::new()],
        };
        for q in 0..2 {
            dc.horizontal[q] = (-1..n as i32).map(|p| dc.build_horizontal(p, q)).collect();
        }
        Ok(dc)
    }

    fn build_horizontal(&self, p: i32, q: usize) -> IntMatrix {
        let n = self.n;
        let src = &self.subsets[(p + 1) as usize];
        let size = self.width(p);
        let mut m = IntMatrix::zeros(self.rank(p + 1, q), self.rank(p, q));
        for (k, s) in src.iter().enumerate() {
            for pos in 0..s.len() {
                let mut t = s.clone();
                t.remove(pos);
                let tk = self.subset_index[(p + 2) as usize][&t];
                let sg = sign(pos);
                if q == 0 {
                    for c in 0..n {
                        m[(tk * n + c, k * n + c)] = sg.clone();
                    }
                } else {
                    // coordinate of element s[a] in I goes to its slot in I'
                    for a in 0..size {
                        if a == pos {
                            continue;
                        }
                        let b = if a < pos { a } else { a - 1 };
                        m[(tk * (size - 1) + b, k * size + a)] = sg.clone();
                    }
                }
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &IntMatrix {
        &self.rays
    }

    /// `|I| = n - p` for subsets in column `p`.
    fn width(&self, p: i32) -> usize {
        (self.n as i32 - p) as usize
    }

    fn in_range(&self, p: i32) -> bool {
        p >= -1 && p <= self.n as i32
    }

    /// Subsets indexing column `p`, in lexicographic order.
    pub fn subsets(&self, p: i32) -> &[Vec<usize>] {
        if self.in_range(p) {
            &self.subsets[(p + 1) as usize]
        } else {
            &[]
        }
    }

    pub fn subset_position(&self, p: i32, subset: &[usize]) -> Option<usize> {
        if !self.in_range(p) {
            return None;
        }
        self.subset_index[(p + 1) as usize].get(subset).copied()
    }

    /// Rank of the free module `A^{p,q}`; zero outside the complex.
    pub fn rank(&self, p: i32, q: usize) -> usize {
        if !self.in_range(p) || q > 1 {
            return 0;
        }
        let blocks = self.subsets(p).len();
        let size = if q == 0 { self.n } else { self.width(p) };
        blocks * size
    }

    /// Number of ranks per subset block of `A^{p,q}`.
    pub fn block_size(&self, p: i32, q: usize) -> usize {
        if !self.in_range(p) || q > 1 {
            0
        } else if q == 0 {
            self.n
        } else {
            self.width(p)
        }
    }

    /// First coordinate of the block for `subsets(p)[k]` in `A^{p,q}`.
    pub fn block_offset(&self, p: i32, q: usize, k: usize) -> usize {
        k * self.block_size(p, q)
    }

    /// `d_v^{p,0}: A^{p,0} -> A^{p,1}`.
    pub fn d_v(&self, p: i32) -> IntMatrix {
        if self.in_range(p) {
            self.vertical[(p + 1) as usize].clone()
        } else {
            IntMatrix::zeros(0, 0)
        }
    }

    /// `d_h^{p,q}: A^{p,q} -> A^{p+1,q}`, with zero maps at the boundary.
    pub fn d_h(&self, p: i32, q: usize) -> IntMatrix {
        if p >= -1 && p < self.n as i32 && q <= 1 {
            self.horizontal[q][(p + 1) as usize].clone()
        } else {
            IntMatrix::zeros(self.rank(p + 1, q), self.rank(p, q))
        }
    }

    /// The vertical map on a single block: rows `v_i`, `i in subset`.
    pub fn vertical_block(&self, subset: &[usize]) -> IntMatrix {
        self.rays.select_rows(subset)
    }

    /// Checks `d_h d_h = 0` on both rows and `d_v d_h = d_h d_v`.
    pub fn validate(&self) -> Result<()> {
        let n = self.n as i32;
        for q in 0..2 {
            for p in -1..n {
                if !self.d_h(p + 1, q).mul(&self.d_h(p, q))?.is_zero() {
                    return Err(Error::internal(format!("d_h^2 != 0 at ({p},{q})")));
                }
            }
        }
        for p in -1..n {
            let a = self.d_v(p + 1).mul(&self.d_h(p, 0))?;
            let b = self.d_h(p, 1).mul(&self.d_v(p))?;
            if a != b {
                return Err(Error::internal(format!("square at p={p} does not commute")));
            }
        }
        Ok(())
    }

    /// Homology of the row `(A^{*,q}, d_h)` at every `p` in `-1..=n`.
    pub fn row_homology(&self, q: usize) -> Result<Vec<FgAbelianGroup>> {
        (-1..=self.n as i32)
            .map(|p| Ok(homology(&self.d_h(p - 1, q), &self.d_h(p, q))?.group().clone()))
            .collect()
    }

    pub fn rows_exact(&self) -> Result<bool> {
        for q in 0..2 {
            if !self.row_homology(q)?.iter().all(FgAbelianGroup::is_trivial) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn build_double_complex(fan: &Fan) -> Result<DoubleComplex> {
    DoubleComplex::new(fan)
}

/// `E1` and `E2` of the horizontal-filtration spectral sequence, with
/// explicit representatives in `A^{p,q}` for every generator.
#[derive(Clone, Debug)]
pub struct SpectralPages {
    complex: DoubleComplex,
    e1: BTreeMap<(i32, usize), PresentedGroup>,
    d1: BTreeMap<(i32, usize), GroupHom>,
    e2: BTreeMap<(i32, usize), PresentedGroup>,
}

impl SpectralPages {
    pub fn new(dc: &DoubleComplex) -> Result<Self> {
        let n = dc.n as i32;
        let mut e1 = BTreeMap::new();
        for p in -1..=n {
            let rank = dc.rank(p, 0);
            let dv = dc.d_v(p);
            e1.insert((p, 0), PresentedGroup::subquotient(&kernel_basis(&dv), &IntMatrix::zeros(rank, 0))?);
            e1.insert((p, 1), PresentedGroup::quotient_of_free(&dv)?);
        }

        let mut d1 = BTreeMap::new();
        for q in 0..2 {
            for p in -1..n {
                let hom = e1[&(p, q)].induced_map(&e1[&(p + 1, q)], &dc.d_h(p, q))?;
                d1.insert((p, q), hom);
            }
        }

        let numer = |p: i32, q: usize| -> IntMatrix {
            e1.get(&(p, q)).map_or_else(|| IntMatrix::zeros(0, 0), |g| g.numerator().clone())
        };
        let denom = |p: i32, q: usize| -> IntMatrix {
            e1.get(&(p, q)).map_or_else(|| IntMatrix::zeros(0, 0), |g| g.denominator().clone())
        };

        let mut e2 = BTreeMap::new();
        for q in 0..2 {
            for p in -1..=n {
                let cycles = preimage(&numer(p, q), &dc.d_h(p, q), &denom(p + 1, q))?;
                let incoming = dc.d_h(p - 1, q).mul(&numer(p - 1, q))?;
                let boundaries = incoming.hstack(&denom(p, q))?;
                e2.insert((p, q), PresentedGroup::subquotient(&cycles, &boundaries)?);
            }
        }

        Ok(SpectralPages {
            complex: dc.clone(),
            e1,
            d1,
            e2,
        })
    }

    pub fn complex(&self) -> &DoubleComplex {
        &self.complex
    }

    pub fn n(&self) -> usize {
        self.complex.n
    }

    pub fn e1(&self, p: i32, q: usize) -> Option<&PresentedGroup> {
        self.e1.get(&(p, q))
    }

    pub fn e2(&self, p: i32, q: usize) -> Option<&PresentedGroup> {
        self.e2.get(&(p, q))
    }

    /// The group `E1^{p,q}`, trivial outside the complex.
    pub fn e1_group(&self, p: i32, q: usize) -> FgAbelianGroup {
        self.e1(p, q).map_or_else(FgAbelianGroup::trivial, |g| g.group().clone())
    }

    pub fn e2_group(&self, p: i32, q: usize) -> FgAbelianGroup {
        self.e2(p, q).map_or_else(FgAbelianGroup::trivial, |g| g.group().clone())
    }

    /// `d1^{p,q}: E1^{p,q} -> E1^{p+1,q}` for `-1 <= p < n`.
    pub fn d1(&self, p: i32, q: usize) -> Option<&GroupHom> {
        self.d1.get(&(p, q))
    }

    /// `d1 d1 = 0`, evaluated on the generator representatives.
    pub fn d1_squares_to_zero(&self) -> Result<bool> {
        for q in 0..2 {
            for p in -1..self.n() as i32 - 1 {
                let comp = self.d1[&(p + 1, q)].compose(&self.d1[&(p, q)])?;
                if !comp.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The Zariski Brauer group `E2^{0,1}`.
    pub fn brauer(&self) -> FgAbelianGroup {
        self.e2_group(0, 1)
    }

    /// `d2` on every `p` with `-1 <= p <= n-2`.
    pub fn d2_maps(&self) -> Result<Vec<D2Map>> {
        (-1..=self.n() as i32 - 2).map(|p| d2_map(self, p)).collect()
    }

    pub fn d2_all_isomorphisms(&self) -> Result<bool> {
        Ok(self.d2_maps()?.iter().all(|m| m.is_isomorphism))
    }

    /// `{"E1":{"p,q":{...}},"E2":{...},"d2_iso":bool}`
    pub fn to_json(&self) -> Result<Value> {
        let page = |m: &BTreeMap<(i32, usize), PresentedGroup>| {
            let mut out = Map::new();
            for ((p, q), g) in m {
                out.insert(format!("{p},{q}"), g.group().to_json());
            }
            Value::Object(out)
        };
        Ok(json!({
            "E1": page(&self.e1),
            "E2": page(&self.e2),
            "d2_iso": self.d2_all_isomorphisms()?,
        }))
    }
}

pub fn e_pages(dc: &DoubleComplex) -> Result<SpectralPages> {
    SpectralPages::new(dc)
}

/// `d2^{p,1}: E2^{p,1} -> E2^{p+2,0}` by the zig-zag `x -> d_h x = d_v y ->
/// d_h y`.
#[derive(Clone, Debug)]
pub struct D2Map {
    pub p: i32,
    pub source: FgAbelianGroup,
    pub target: FgAbelianGroup,
    pub hom: GroupHom,
    pub is_isomorphism: bool,
}

pub fn d2_map(pages: &SpectralPages, p: i32) -> Result<D2Map> {
    let dc = &pages.complex;
    let n = dc.n as i32;
    if p < -1 || p > n - 2 {
        return Err(Error::invalid(format!("d2^{{p,1}} needs -1 <= p <= {}, got {p}", n - 2)));
    }
    let source = &pages.e2[&(p, 1)];
    let target = &pages.e2[&(p + 2, 0)];
    let dh_top = dc.d_h(p, 1);
    let dh_bottom = dc.d_h(p + 1, 0);
    let lift = smith_normal_form(&dc.d_v(p + 1));

    let zigzag = |x: &[BigInt]| -> Result<Vec<BigInt>> {
        let up = dh_top.mul_vec(x)?;
        let y = solve_with(&lift, &up)
            .ok_or_else(|| Error::internal(format!("d2 zig-zag has no lift at p={p}")))?;
        dh_bottom.mul_vec(&y)
    };

    let mut cols = Vec::with_capacity(source.generator_count());
    for j in 0..source.generator_count() {
        let z = zigzag(&source.generator(j))?;
        let c = target
            .coordinates(&z)
            .ok_or_else(|| Error::internal(format!("d2 image leaves E2^{{{},0}}", p + 2)))?;
        cols.push(c);
    }
    let den = source.denominator();
    for j in 0..den.cols() {
        if !target.is_zero_class(&zigzag(&den.column(j))?) {
            return Err(Error::internal("d2 is not well defined on boundaries"));
        }
    }
    let hom = GroupHom::new(
        source.orders().to_vec(),
        target.orders().to_vec(),
        IntMatrix::from_columns(target.generator_count(), &cols),
    )?;
    let is_isomorphism = hom.is_isomorphism()?;
    Ok(D2Map {
        p,
        source: source.group().clone(),
        target: target.group().clone(),
        hom,
        is_isomorphism,
    })
}

/// The dilation `theta_d` acts on every block of the complex as
/// multiplication by `d`.
#[derive(Clone, Debug)]
pub struct DilationAction {
    factor: BigInt,
}

pub fn dilation_action(dc: &DoubleComplex, d: u64) -> Result<DilationAction> {
    if d == 0 {
        return Err(Error::invalid("dilation factor must be positive"));
    }
    let action = DilationAction { factor: BigInt::from(d) };
    if !action.commutes_with(dc)? {
        return Err(Error::internal("dilation is not a chain map"));
    }
    Ok(action)
}

impl DilationAction {
    pub fn factor(&self) -> &BigInt {
        &self.factor
    }

    pub fn chain_map(&self, dc: &DoubleComplex, p: i32, q: usize) -> IntMatrix {
        IntMatrix::scalar(dc.rank(p, q), self.factor.clone())
    }

    /// Whether the endomorphism commutes with `d_v` and both `d_h`.
    pub fn commutes_with(&self, dc: &DoubleComplex) -> Result<bool> {
        let n = dc.n as i32;
        for p in -1..=n {
            let dv = dc.d_v(p);
            if dv.mul(&self.chain_map(dc, p, 0))? != self.chain_map(dc, p, 1).mul(&dv)? {
                return Ok(false);
            }
            for q in 0..2 {
                let dh = dc.d_h(p, q);
                if dh.mul(&self.chain_map(dc, p, q))? != self.chain_map(dc, p + 1, q).mul(&dh)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn on_e1(&self, pages: &SpectralPages, p: i32, q: usize) -> Result<GroupHom> {
        let g = pages.e1(p, q).ok_or_else(|| Error::invalid(format!("no E1 entry at ({p},{q})")))?;
        g.induced_map(g, &self.chain_map(&pages.complex, p, q))
    }

    pub fn on_e2(&self, pages: &SpectralPages, p: i32, q: usize) -> Result<GroupHom> {
        let g = pages.e2(p, q).ok_or_else(|| Error::invalid(format!("no E2 entry at ({p},{q})")))?;
        g.induced_map(g, &self.chain_map(&pages.complex, p, q))
    }
}

/// Pages for `P(w)` after dividing out `gcd(w)`.
pub fn pages_for_weights(w: &WeightVector) -> Result<SpectralPages> {
    let fan = Fan::new(&w.divide_by_gcd())?;
    SpectralPages::new(&DoubleComplex::new(&fan)?)
}

/// `E2^{0,1}` for `P(w)`.
pub fn brauer_group(w: &WeightVector) -> Result<FgAbelianGroup> {
    Ok(pages_for_weights(w)?.brauer())
}
