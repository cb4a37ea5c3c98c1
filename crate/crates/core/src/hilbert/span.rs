//! Subspaces of graded pieces kept in semi-echelon form, and the walk that
//! builds `I_{t+1} = R_1 I_t + (generators of degree t + 1)`.

use crate::field::Field;

use super::monomials::Monomials;

const NONE: u32 = u32::MAX;

/// A subspace of `K^width` spanned by rows with distinct leading columns,
/// each leading coefficient equal to one.
#[derive(Clone)]
pub struct Echelon<F: Field> {
    field: F,
    width: usize,
    rows: Vec<Vec<F::Elem>>,
    leads: Vec<usize>,
    lead_row: Vec<u32>,
    /// Set once the span is everything; rows are then dropped.
    full: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            leads: Vec::new(),
            lead_row: vec![NONE; width],
            full: width == 0,
        }
    }

    pub fn everything(field: F, width: usize) -> Self {
        let mut e = Self::new(field, width);
        e.full = true;
        e.lead_row = Vec::new();
        e
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        if self.full {
            self.width
        } else {
            self.rows.len()
        }
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn has_lead(&self, col: usize) -> bool {
        self.full || self.lead_row[col] != NONE
    }

    /// Rows with their leading columns. Empty once the span is full.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &[F::Elem])> {
        self.leads.iter().copied().zip(self.rows.iter().map(|r| r.as_slice()))
    }

    /// Reduces `v` in place; returns the leading column of what is left.
    pub fn reduce(&self, v: &mut [F::Elem]) -> Option<usize> {
        if self.full {
            return None;
        }
        let mut c = 0;
        loop {
            while c < self.width && self.field.is_zero(&v[c]) {
                c += 1;
            }
            if c == self.width {
                return None;
            }
            let r = self.lead_row[c];
            if r == NONE {
                return Some(c);
            }
            let f = v[c].clone();
            self.field.sub_scaled(&mut v[c..], &f, &self.rows[r as usize][c..]);
            c += 1;
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        match self.reduce(&mut v) {
            Some(lead) => {
                self.push_with_lead(v, lead);
                true
            }
            None => false,
        }
    }

    /// Adds a row already known to be zero before the unused column `lead`.
    pub fn push_with_lead(&mut self, mut v: Vec<F::Elem>, lead: usize) {
        debug_assert!(!self.has_lead(lead) && !self.field.is_zero(&v[lead]));
        if !self.field.is_one(&v[lead]) {
            let inv = self.field.inv(&v[lead]);
            self.field.scale(&mut v[lead..], &inv);
        }
        self.lead_row[lead] = self.rows.len() as u32;
        self.rows.push(v);
        self.leads.push(lead);
        if self.rows.len() == self.width {
            *self = Self::everything(self.field.clone(), self.width);
        }
    }

    /// `self ∩ other` by the Zassenhaus construction.
    pub fn intersect(&self, other: &Echelon<F>) -> Echelon<F> {
        assert_eq!(self.width, other.width);
        if self.full {
            return other.clone();
        }
        if other.full {
            return self.clone();
        }
        let w = self.width;
        let zero = self.field.zero();
        let mut big = Echelon::new(self.field.clone(), 2 * w);
        for (_, row) in self.rows() {
            let mut v = row.to_vec();
            v.extend_from_slice(row);
            big.insert(v);
        }
        for (_, row) in other.rows() {
            let mut v = row.to_vec();
            v.resize(2 * w, zero.clone());
            big.insert(v);
        }
        let mut out = Echelon::new(self.field.clone(), w);
        for (lead, row) in big.rows() {
            if lead >= w {
                out.insert(row[w..].to_vec());
            }
        }
        out
    }
}

/// `x_var * v` for `v` in degree `degree`.
pub fn times_variable<F: Field>(field: &F, mons: &Monomials, degree: usize, var: usize, v: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); mons.count(degree + 1)];
    for (i, &j) in mons.up_table(degree, var).iter().enumerate() {
        if !field.is_zero(&v[i]) {
            out[j as usize] = v[i].clone();
        }
    }
    out
}

/// `l * v` for a linear form with coefficients `l`.
pub fn times_linear<F: Field>(field: &F, mons: &Monomials, degree: usize, l: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); mons.count(degree + 1)];
    for (var, c) in l.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        for (i, &j) in mons.up_table(degree, var).iter().enumerate() {
            if !field.is_zero(&v[i]) {
                let j = j as usize;
                out[j] = field.add(&out[j], &field.mul(c, &v[i]));
            }
        }
    }
    out
}

/// Graded pieces `I_0, I_1, ...` of a homogeneous ideal, one degree at a time.
pub struct IdealWalk<'m, F: Field> {
    field: F,
    mons: &'m Monomials,
    /// Generators sorted by degree.
    gens: Vec<(usize, Vec<F::Elem>)>,
    next_gen: usize,
    t: usize,
    piece: Echelon<F>,
}

impl<'m, F: Field> IdealWalk<'m, F> {
    pub fn new(field: F, mons: &'m Monomials, mut gens: Vec<(usize, Vec<F::Elem>)>) -> Self {
        gens.sort_by_key(|g| g.0);
        let mut walk = IdealWalk {
            piece: Echelon::new(field.clone(), mons.count(0)),
            field,
            mons,
            gens,
            next_gen: 0,
            t: 0,
        };
        walk.add_generators();
        walk
    }

    fn add_generators(&mut self) {
        while self.next_gen < self.gens.len() && self.gens[self.next_gen].0 == self.t {
            if !self.piece.is_full() {
                self.piece.insert(self.gens[self.next_gen].1.clone());
            }
            self.next_gen += 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.t
    }

    /// `I_t` for the current degree `t`.
    pub fn piece(&self) -> &Echelon<F> {
        &self.piece
    }

    pub fn dim(&self) -> usize {
        self.piece.rank()
    }

    pub fn codim(&self) -> usize {
        self.mons.count(self.t) - self.piece.rank()
    }

    /// Moves to degree `t + 1`.
    pub fn advance(&mut self) {
        let t = self.t;
        assert!(t < self.mons.max_degree(), "monomial tables end at degree {}", self.mons.max_degree());
        let width = self.mons.count(t + 1);
        let next = if self.piece.is_full() {
            Echelon::everything(self.field.clone(), width)
        } else {
            let mut next = Echelon::new(self.field.clone(), width);
            let nvars = self.mons.nvars();
            let mut deferred = Vec::new();
            // Products whose leading monomial is new go in without reduction.
            for (ri, (lead, row)) in self.piece.rows().enumerate() {
                for var in 0..nvars {
                    let m = self.mons.up(t, var, lead);
                    if next.has_lead(m) {
                        deferred.push((ri, var));
                    } else {
                        next.push_with_lead(times_variable(&self.field, self.mons, t, var, row), m);
                    }
                }
            }
            let rows: Vec<&[F::Elem]> = self.piece.rows().map(|(_, r)| r).collect();
            for (ri, var) in deferred {
                if next.is_full() {
                    break;
                }
                next.insert(times_variable(&self.field, self.mons, t, var, rows[ri]));
            }
            next
        };
        self.piece = next;
        self.t = t + 1;
        self.add_generators();
    }

    /// Advances until the current degree is `t`.
    pub fn advance_to(&mut self, t: usize) {
        while self.t < t {
            self.advance();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn echelon_rank_and_intersection() {
        let f = PrimeField::new(5).unwrap();
        let mut u = Echelon::new(f.clone(), 3);
        assert!(u.insert(vec![1, 1, 0]));
        assert!(u.insert(vec![0, 1, 1]));
        assert!(!u.insert(vec![1, 2, 1]));
        assert_eq!(u.rank(), 2);
        let mut w = Echelon::new(f.clone(), 3);
        w.insert(vec![1, 0, 4]);
        w.insert(vec![0, 0, 1]);
        // span{(1,1,0),(0,1,1)} ∩ span{(1,0,0),(0,0,1)} = span{(1,0,4)}
        let i = u.intersect(&w);
        assert_eq!(i.rank(), 1);
        let mut probe = vec![1, 0, 4];
        assert_eq!(i.reduce(&mut probe), None);
        assert!(u.insert(vec![0, 0, 3]));
        assert!(u.is_full());
        assert_eq!(u.intersect(&w).rank(), 2);
    }

    #[test]
    fn walk_of_maximal_ideal_power() {
        // m^2 in two variables: dims 0, 0, 3, 4, 5, ...
        let f = PrimeField::new(2).unwrap();
        let mons = Monomials::new(2, 6);
        let gens = (0..3)
            .map(|i| {
                let mut v = vec![0u64; 3];
                v[i] = 1;
                (2, v)
            })
            .collect();
        let mut walk = IdealWalk::new(f, &mons, gens);
        let mut dims = vec![walk.dim()];
        for _ in 0..6 {
            walk.advance();
            dims.push(walk.dim());
        }
        assert_eq!(dims, [0, 0, 3, 4, 5, 6, 7]);
    }
}
