use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::smith::{inverse_unimodular, kernel_basis, smith_normal_form};
use super::{FgAbelianGroup, IntMatrix};
use crate::error::{Error, Result};

/// A subquotient `N / D` of a free module `Z^m`, where `N` and `D` are given
/// by spanning columns and `D` is contained in `N`.
///
/// Besides its isomorphism type, the group remembers explicit representatives
/// in `Z^m` for a canonical generating set (one per invariant factor, then one
/// per free summand), so maps between ambient modules can be evaluated on
/// classes.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    ambient_rank: usize,
    numerator: IntMatrix,
    denominator: IntMatrix,
    generators: IntMatrix,
    relations: IntMatrix,
    orders: Vec<BigInt>,
    group: FgAbelianGroup,
    // x in N  =>  lattice coordinates c_i = (L_N x)_i / d_i
    numer_left: IntMatrix,
    numer_factors: Vec<BigInt>,
    // canonical coordinates are (L_C c)_j for j in kept
    rel_left: IntMatrix,
    kept: Vec<usize>,
}

impl PresentedGroup {
    /// `span(numerator) / span(denominator)` inside `Z^ambient_rank`.
    pub fn subquotient(numerator: &IntMatrix, denominator: &IntMatrix) -> Result<Self> {
        let ambient_rank = numerator.rows();
        if denominator.rows() != ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "numerator lives in Z^{} but denominator in Z^{}",
                ambient_rank,
                denominator.rows()
            )));
        }
        let snf_n = smith_normal_form(numerator);
        let r = snf_n.rank();
        let l_inv = inverse_unimodular(&snf_n.left)
            .ok_or_else(|| Error::internal("Smith transform is not unimodular"))?;
        // basis of span(N): d_i * L^{-1} e_i
        let mut basis = l_inv.select_columns(&(0..r).collect::<Vec<_>>());
        for (i, d) in snf_n.invariant_factors.iter().enumerate() {
            for k in 0..ambient_rank {
                basis[(k, i)] *= d;
            }
        }

        let mut partial = PresentedGroup {
            ambient_rank,
            numerator: numerator.clone(),
            denominator: denominator.clone(),
            generators: IntMatrix::zeros(ambient_rank, 0),
            relations: IntMatrix::zeros(0, 0),
            orders: Vec::new(),
            group: FgAbelianGroup::trivial(),
            numer_left: snf_n.left,
            numer_factors: snf_n.invariant_factors,
            rel_left: IntMatrix::identity(r),
            kept: Vec::new(),
        };

        let mut rel_cols = Vec::with_capacity(denominator.cols());
        for j in 0..denominator.cols() {
            let c = partial.lattice_coordinates(&denominator.column(j)).ok_or_else(|| {
                Error::internal(format!("denominator generator {j} is not in the numerator"))
            })?;
            rel_cols.push(c);
        }
        let rel = IntMatrix::from_columns(r, &rel_cols);
        let snf_c = smith_normal_form(&rel);
        let rel_left_inv = inverse_unimodular(&snf_c.left)
            .ok_or_else(|| Error::internal("Smith transform is not unimodular"))?;

        let kept: Vec<usize> = (0..r).filter(|&j| !snf_c.diag(j).is_one()).collect();
        let orders: Vec<BigInt> = kept.iter().map(|&j| snf_c.diag(j)).collect();
        let generators = basis.mul(&rel_left_inv.select_columns(&kept))?;
        let torsion_cols: Vec<usize> = (0..kept.len()).filter(|&k| !orders[k].is_zero()).collect();
        let relations = IntMatrix::diagonal(kept.len(), kept.len(), orders.iter().cloned())
            .select_columns(&torsion_cols);

        partial.group = FgAbelianGroup::from_smith_diagonal(r, &snf_c.invariant_factors);
        partial.generators = generators;
        partial.relations = relations;
        partial.orders = orders;
        partial.rel_left = snf_c.left;
        partial.kept = kept;
        Ok(partial)
    }

    /// `Z^m / span(relations)`.
    pub fn quotient_of_free(relations: &IntMatrix) -> Result<Self> {
        Self::subquotient(&IntMatrix::identity(relations.rows()), relations)
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Columns are representatives of the canonical generators.
    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn generator(&self, j: usize) -> Vec<BigInt> {
        self.generators.column(j)
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    /// Columns are the relations among the generators (in generator
    /// coordinates); for the canonical presentation they are `t_j e_j`.
    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Order of each generator; zero marks a free generator.
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn numerator(&self) -> &IntMatrix {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntMatrix {
        &self.denominator
    }

    fn lattice_coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        if x.len() != self.ambient_rank {
            return None;
        }
        let y = self.numer_left.mul_vec(x).ok()?;
        let mut c = Vec::with_capacity(self.numer_factors.len());
        for (i, v) in y.iter().enumerate() {
            if i < self.numer_factors.len() {
                let (q, r) = v.div_rem(&self.numer_factors[i]);
                if !r.is_zero() {
                    return None;
                }
                c.push(q);
            } else if !v.is_zero() {
                return None;
            }
        }
        Some(c)
    }

    /// Coordinates of the class of `x` in the canonical generators, torsion
    /// coordinates reduced into `[0, t_j)`. `None` if `x` is not in `N`.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.lattice_coordinates(x)?;
        let z = self.rel_left.mul_vec(&c).ok()?;
        Some(
            self.kept
                .iter()
                .zip(&self.orders)
                .map(|(&j, t)| if t.is_zero() { z[j].clone() } else { z[j].mod_floor(t) })
                .collect(),
        )
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.lattice_coordinates(x).is_some()
    }

    /// True if `x` lies in `N` and its class vanishes.
    pub fn is_zero_class(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some_and(|c| c.iter().all(Zero::is_zero))
    }

    /// The homomorphism `self -> target` induced by the ambient map `f`.
    ///
    /// Fails if `f` does not carry `N` into the target's numerator or `D`
    /// into its denominator.
    pub fn induced_map(&self, target: &PresentedGroup, f: &IntMatrix) -> Result<GroupHom> {
        if f.cols() != self.ambient_rank || f.rows() != target.ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{} between ambient ranks {} and {}",
                f.rows(),
                f.cols(),
                self.ambient_rank,
                target.ambient_rank
            )));
        }
        let mut cols = Vec::with_capacity(self.generator_count());
        for j in 0..self.generator_count() {
            let img = f.mul_vec(&self.generator(j))?;
            let c = target.coordinates(&img).ok_or_else(|| {
                Error::internal(format!("image of generator {j} leaves the target numerator"))
            })?;
            cols.push(c);
        }
        for j in 0..self.denominator.cols() {
            let img = f.mul_vec(&self.denominator.column(j))?;
            if !target.is_zero_class(&img) {
                return Err(Error::internal("induced map is not well defined on classes"));
            }
        }
        GroupHom::new(
            self.orders.clone(),
            target.orders.clone(),
            IntMatrix::from_columns(target.generator_count(), &cols),
        )
    }
}

/// A homomorphism between groups given in canonical generators:
/// `Z^s / diag(source_orders) -> Z^t / diag(target_orders)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source_orders: Vec<BigInt>,
    target_orders: Vec<BigInt>,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source_orders: Vec<BigInt>, target_orders: Vec<BigInt>, mut matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target_orders.len() || matrix.cols() != source_orders.len() {
            return Err(Error::DimensionMismatch("homomorphism matrix shape".into()));
        }
        for (i, t) in target_orders.iter().enumerate() {
            if !t.is_zero() {
                for j in 0..matrix.cols() {
                    let v = matrix[(i, j)].mod_floor(t);
                    matrix[(i, j)] = v;
                }
            }
        }
        let hom = GroupHom {
            source_orders,
            target_orders,
            matrix,
        };
        // t_j * e_j must map to zero
        for (j, t) in hom.source_orders.iter().enumerate() {
            let img: Vec<BigInt> = hom.matrix.column(j).iter().map(|x| x * t).collect();
            if !hom.is_zero_in_target(&img) {
                return Err(Error::internal("homomorphism does not respect source relations"));
            }
        }
        Ok(hom)
    }

    /// Multiplication by `c` on a group with the given generator orders.
    pub fn scalar(orders: Vec<BigInt>, c: &BigInt) -> Result<Self> {
        let n = orders.len();
        Self::new(orders.clone(), orders, IntMatrix::scalar(n, c.clone()))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_diagonal(self.source_orders.iter().cloned())
    }

    pub fn target(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_diagonal(self.target_orders.iter().cloned())
    }

    fn is_zero_in_target(&self, v: &[BigInt]) -> bool {
        v.iter()
            .zip(&self.target_orders)
            .all(|(x, t)| if t.is_zero() { x.is_zero() } else { x.is_multiple_of(t) })
    }

    fn target_relations(&self) -> IntMatrix {
        let cols: Vec<usize> = (0..self.target_orders.len())
            .filter(|&i| !self.target_orders[i].is_zero())
            .collect();
        let n = self.target_orders.len();
        IntMatrix::diagonal(n, n, self.target_orders.iter().cloned()).select_columns(&cols)
    }

    fn source_relations(&self) -> IntMatrix {
        let cols: Vec<usize> = (0..self.source_orders.len())
            .filter(|&i| !self.source_orders[i].is_zero())
            .collect();
        let n = self.source_orders.len();
        IntMatrix::diagonal(n, n, self.source_orders.iter().cloned()).select_columns(&cols)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.is_zero_in_target(&self.matrix.column(j)))
    }

    pub fn kernel(&self) -> Result<FgAbelianGroup> {
        let s = self.source_orders.len();
        let numer = preimage(&IntMatrix::identity(s), &self.matrix, &self.target_relations())?;
        Ok(PresentedGroup::subquotient(&numer, &self.source_relations())?.group().clone())
    }

    pub fn cokernel(&self) -> Result<FgAbelianGroup> {
        let rel = self.matrix.hstack(&self.target_relations())?;
        Ok(super::cokernel(&rel))
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.is_trivial())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.cokernel()?.is_trivial())
    }

    pub fn is_isomorphism(&self) -> Result<bool> {
        Ok(self.is_surjective()? && self.is_injective()?)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target_orders != self.source_orders {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        GroupHom::new(
            first.source_orders.clone(),
            self.target_orders.clone(),
            self.matrix.mul(&first.matrix)?,
        )
    }

    /// Whether the map is multiplication by `c`.
    pub fn is_scalar(&self, c: &BigInt) -> bool {
        if self.source_orders != self.target_orders {
            return false;
        }
        let n = self.source_orders.len();
        (0..n).all(|j| {
            let mut want = vec![BigInt::zero(); n];
            want[j] = c.clone();
            let diff: Vec<BigInt> = self.matrix.column(j).iter().zip(&want).map(|(a, b)| a - b).collect();
            self.is_zero_in_target(&diff)
        })
    }
}

/// Spanning columns for `{x in span(domain) : f x in span(target)}`.
pub fn preimage(domain: &IntMatrix, f: &IntMatrix, target: &IntMatrix) -> Result<IntMatrix> {
    let image = f.mul(domain)?;
    let stacked = image.hstack(&target.scale(&BigInt::from(-1)))?;
    let ker = kernel_basis(&stacked);
    let top: Vec<usize> = (0..domain.cols()).collect();
    domain.mul(&ker.select_rows(&top))
}
