//! Subspaces of GF(2)^d kept in reduced row-echelon form.

use crate::bitvec::BitVec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gf2Error {
    #[error("vector of length {got} used with a subspace of GF(2)^{expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Whether an insertion grew the subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insertion {
    Absorbed,
    Extended,
}

/// A subspace of GF(2)^`ambient_dim`.
///
/// Basis rows are nonzero with strictly increasing pivots (lowest set bit), and each
/// pivot column is zero in every other row, so membership is a single reduction pass.
#[derive(Debug, Clone)]
pub struct Gf2Subspace {
    ambient_dim: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Gf2Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Gf2Subspace { ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let mut s = Gf2Subspace::zero(ambient_dim);
        for i in 0..ambient_dim {
            s.rows.push(BitVec::from_indices(ambient_dim, [i]));
            s.pivots.push(i);
        }
        s
    }

    /// Span of the given vectors.
    pub fn span<'a, I: IntoIterator<Item = &'a BitVec>>(ambient_dim: usize, gens: I) -> Result<Self, Gf2Error> {
        let mut s = Gf2Subspace::zero(ambient_dim);
        for v in gens {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, v: &BitVec) -> Result<(), Gf2Error> {
        if v.len() == self.ambient_dim {
            Ok(())
        } else {
            Err(Gf2Error::DimensionMismatch { expected: self.ambient_dim, got: v.len() })
        }
    }

    fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    /// The canonical representative of `v + self`.
    pub fn reduced(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        self.check(v)?;
        let mut r = v.clone();
        self.reduce(&mut r);
        Ok(r)
    }

    pub fn insert(&mut self, v: &BitVec) -> Result<Insertion, Gf2Error> {
        self.check(v)?;
        let mut r = v.clone();
        self.reduce(&mut r);
        let Some(p) = r.first_one() else {
            return Ok(Insertion::Absorbed);
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        Ok(Insertion::Extended)
    }

    pub fn contains(&self, v: &BitVec) -> Result<bool, Gf2Error> {
        Ok(self.reduced(v)?.is_zero())
    }

    /// `v ∈ shift + self`.
    pub fn coset_contains(&self, shift: &BitVec, v: &BitVec) -> Result<bool, Gf2Error> {
        self.check(shift)?;
        self.check(v)?;
        self.contains(&(v ^ shift))
    }

    /// `{x : x·b = 0 for every b in self}`.
    pub fn orthogonal_complement(&self) -> Gf2Subspace {
        let d = self.ambient_dim;
        let mut is_pivot = vec![false; d];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Gf2Subspace::zero(d);
        for f in (0..d).filter(|&f| !is_pivot[f]) {
            let mut x = BitVec::from_indices(d, [f]);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if row.get(f) {
                    x.set(p, true);
                }
            }
            out.insert(&x).expect("same ambient space");
        }
        out
    }

    pub fn sum(&self, other: &Gf2Subspace) -> Result<Gf2Subspace, Gf2Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Gf2Error::DimensionMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn is_subspace_of(&self, other: &Gf2Subspace) -> Result<bool, Gf2Error> {
        for v in &self.rows {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Gf2Subspace) -> Result<bool, Gf2Error> {
        Ok(self.dim() == other.dim() && self.is_subspace_of(other)?)
    }

    /// Every member, each exactly once, in Gray-code order over the basis (starting at zero).
    pub fn members(&self) -> Members<'_> {
        Members { space: self, step: 0, current: BitVec::zeros(self.ambient_dim), done: false }
    }
}

impl PartialEq for Gf2Subspace {
    /// Reduced bases are canonical, so equal spans have equal rows.
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.rows == other.rows
    }
}

impl Eq for Gf2Subspace {}

/// Gray-code walk over a subspace; see [`Gf2Subspace::members`].
pub struct Members<'a> {
    space: &'a Gf2Subspace,
    step: u64,
    current: BitVec,
    done: bool,
}

impl Iterator for Members<'_> {
    type Item = BitVec;

    fn next(&mut self) -> Option<BitVec> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.step += 1;
        let flip = self.step.trailing_zeros() as usize;
        if flip >= self.space.dim() {
            self.done = true;
        } else {
            self.current.xor_assign(&self.space.rows[flip]);
        }
        Some(out)
    }
}
