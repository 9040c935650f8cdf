//! Symbolic trees of entire functions over a realization.

use crate::Cplx;
use std::fmt;
use std::sync::Arc;

/// User-supplied entire function.
pub type UserClosure = dyn Fn(Cplx) -> Cplx + Send + Sync;

#[derive(Clone)]
pub struct UserFn {
    pub(crate) label: Arc<str>,
    pub(crate) f: Arc<UserClosure>,
    /// Evaluate `conj(f(conj z))` instead of `f(z)`.
    pub(crate) conjugated: bool,
}

impl UserFn {
    pub(crate) fn eval(&self, z: Cplx) -> Cplx {
        if self.conjugated {
            (self.f)(z.conj()).conj()
        } else {
            (self.f)(z)
        }
    }
}

#[derive(Clone)]
pub(crate) struct Quotient {
    pub term: EntireFn,
    pub c: Cplx,
    pub pivot: EntireFn,
    pub w: Cplx,
}

#[derive(Clone)]
pub(crate) enum Node {
    E,
    ESharp,
    /// `s_γ(z) = (i/2)[e^{iγ} e(z) - e^{-iγ} e#(z)]`.
    S(f64),
    /// `k(·, w)`.
    Kernel(Cplx),
    User(UserFn),
    LinComb(Vec<(Cplx, EntireFn)>),
    /// `(z - w) f(z)`.
    MulAffine(Cplx, EntireFn),
    /// `(term(z) - c·pivot(z)) / (z - w)`, with the numerator vanishing at `w`.
    DiffQuotient(Quotient),
}

/// An entire function, represented as an immutable expression tree.
///
/// Trees are cheap to clone; evaluation goes through [`super::DbSpace`], which
/// supplies the realization the atoms refer to.
#[derive(Clone)]
pub struct EntireFn(pub(crate) Arc<Node>);

impl EntireFn {
    fn from_node(n: Node) -> Self {
        EntireFn(Arc::new(n))
    }

    pub(crate) fn node(&self) -> &Node {
        &self.0
    }

    pub fn e() -> Self {
        Self::from_node(Node::E)
    }

    pub fn e_sharp() -> Self {
        Self::from_node(Node::ESharp)
    }

    pub fn s(gamma: f64) -> Self {
        Self::from_node(Node::S(gamma))
    }

    pub fn kernel(w: Cplx) -> Self {
        Self::from_node(Node::Kernel(w))
    }

    pub fn user<F>(label: &str, f: F) -> Self
    where
        F: Fn(Cplx) -> Cplx + Send + Sync + 'static,
    {
        Self::from_node(Node::User(UserFn { label: label.into(), f: Arc::new(f), conjugated: false }))
    }

    pub fn zero() -> Self {
        Self::lin_comb(Vec::new())
    }

    pub fn lin_comb(terms: Vec<(Cplx, EntireFn)>) -> Self {
        Self::from_node(Node::LinComb(terms))
    }

    pub fn scale(&self, s: Cplx) -> Self {
        Self::lin_comb(vec![(s, self.clone())])
    }

    pub fn add(&self, other: &EntireFn) -> Self {
        Self::lin_comb(vec![(1.0.into(), self.clone()), (1.0.into(), other.clone())])
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: Cplx, other: &EntireFn) -> Self {
        Self::lin_comb(vec![(1.0.into(), self.clone()), (s, other.clone())])
    }

    pub fn sub(&self, other: &EntireFn) -> Self {
        self.axpy((-1.0).into(), other)
    }

    /// `(z - w) f(z)`.
    pub fn mul_affine(&self, w: Cplx) -> Self {
        Self::from_node(Node::MulAffine(w, self.clone()))
    }

    /// `z f(z)`.
    pub fn mul_z(&self) -> Self {
        self.mul_affine(0.0.into())
    }

    /// Builds a difference quotient without checking removability.
    pub(crate) fn quotient_unchecked(term: EntireFn, c: Cplx, pivot: EntireFn, w: Cplx) -> Self {
        Self::from_node(Node::DiffQuotient(Quotient { term, c, pivot, w }))
    }

    /// `f#(z) = conj(f(conj z))`, computed structurally.
    pub fn sharp(&self) -> Self {
        let n = match self.node() {
            Node::E => Node::ESharp,
            Node::ESharp => Node::E,
            Node::S(g) => Node::S(*g),
            Node::Kernel(w) => Node::Kernel(w.conj()),
            Node::User(u) => Node::User(UserFn { conjugated: !u.conjugated, ..u.clone() }),
            Node::LinComb(ts) => {
                Node::LinComb(ts.iter().map(|(c, f)| (c.conj(), f.sharp())).collect())
            }
            Node::MulAffine(w, f) => Node::MulAffine(w.conj(), f.sharp()),
            Node::DiffQuotient(q) => Node::DiffQuotient(Quotient {
                term: q.term.sharp(),
                c: q.c.conj(),
                pivot: q.pivot.sharp(),
                w: q.w.conj(),
            }),
        };
        Self::from_node(n)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + match self.node() {
            Node::LinComb(ts) => ts.iter().map(|(_, f)| f.size()).sum(),
            Node::MulAffine(_, f) => f.size(),
            Node::DiffQuotient(q) => q.term.size() + q.pivot.size(),
            _ => 0,
        }
    }
}

impl fmt::Debug for EntireFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::E => write!(f, "e"),
            Node::ESharp => write!(f, "e#"),
            Node::S(g) => write!(f, "s[{g}]"),
            Node::Kernel(w) => write!(f, "k(·,{w})"),
            Node::User(u) => write!(f, "{}{}", u.label, if u.conjugated { "#" } else { "" }),
            Node::LinComb(ts) => {
                write!(f, "(")?;
                for (i, (c, t)) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}·{t:?}")?;
                }
                write!(f, ")")
            }
            Node::MulAffine(w, t) => write!(f, "(z-{w})·{t:?}"),
            Node::DiffQuotient(q) => {
                write!(f, "[{:?} - {}·{:?}]/(z-{})", q.term, q.c, q.pivot, q.w)
            }
        }
    }
}
