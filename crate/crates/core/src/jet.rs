//! Truncated multivariate Taylor jets over the real coordinates `(x, y, t)`.
//!
//! A [`Jet`] stores the Taylor coefficients of a complex-valued function up to a
//! runtime degree `deg <= MAX_DEG`. Variables are real, so conjugating a jet
//! conjugates each coefficient. Differentiating drops one degree, which is how
//! nested derivatives (potentials built from `∂P`, frames built from `∂U`) stay
//! exact without symbolic algebra.
//!
//! Monomials are graded by total degree. Inside a degree block the `t`-free
//! monomials come first, so a two-variable jet only touches a prefix of each
//! block.

use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::C64;

/// Highest supported total degree.
pub const MAX_DEG: u8 = 5;
/// Number of monomials of total degree at most [`MAX_DEG`] in three variables.
pub const NCOEF: usize = 56;

const fn block_len(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

const fn block_start(d: usize) -> usize {
    let mut s = 0;
    let mut k = 0;
    while k < d {
        s += block_len(k);
        k += 1;
    }
    s
}

/// Index of the monomial `x^a y^b t^c`.
pub const fn index_of(a: usize, b: usize, c: usize) -> usize {
    let d = a + b + c;
    let mut off = 0;
    let mut cc = 0;
    while cc < c {
        off += d - cc + 1;
        cc += 1;
    }
    block_start(d) + off + (d - c - a)
}

const fn build_monos() -> [[u8; 3]; NCOEF] {
    let mut m = [[0u8; 3]; NCOEF];
    let mut d = 0;
    while d <= MAX_DEG as usize {
        let mut c = 0;
        while c <= d {
            let mut a = d - c;
            loop {
                let b = d - c - a;
                m[index_of(a, b, c)] = [a as u8, b as u8, c as u8];
                if a == 0 {
                    break;
                }
                a -= 1;
            }
            c += 1;
        }
        d += 1;
    }
    m
}

/// Exponents `(a, b, c)` of each coefficient slot.
pub const MONOS: [[u8; 3]; NCOEF] = build_monos();

const NONE: u8 = u8::MAX;

const fn build_add() -> [[u8; NCOEF]; NCOEF] {
    let mut t = [[NONE; NCOEF]; NCOEF];
    let mut i = 0;
    while i < NCOEF {
        let mut j = 0;
        while j < NCOEF {
            let a = MONOS[i][0] as usize + MONOS[j][0] as usize;
            let b = MONOS[i][1] as usize + MONOS[j][1] as usize;
            let c = MONOS[i][2] as usize + MONOS[j][2] as usize;
            if a + b + c <= MAX_DEG as usize {
                t[i][j] = index_of(a, b, c) as u8;
            }
            j += 1;
        }
        i += 1;
    }
    t
}

static ADD: [[u8; NCOEF]; NCOEF] = build_add();

const fn build_starts() -> [usize; MAX_DEG as usize + 2] {
    let mut s = [0usize; MAX_DEG as usize + 2];
    let mut d = 0;
    while d < MAX_DEG as usize + 2 {
        s[d] = block_start(d);
        d += 1;
    }
    s
}

const fn build_deriv() -> [[(u8, f64); NCOEF]; 3] {
    let mut t = [[(0u8, 0.0f64); NCOEF]; 3];
    let mut v = 0;
    while v < 3 {
        let mut i = 0;
        while i < NCOEF {
            let m = MONOS[i];
            let mut e = [m[0] as usize, m[1] as usize, m[2] as usize];
            e[v] += 1;
            if e[0] + e[1] + e[2] <= MAX_DEG as usize {
                t[v][i] = (index_of(e[0], e[1], e[2]) as u8, e[v] as f64);
            }
            i += 1;
        }
        v += 1;
    }
    t
}

/// `(source slot, factor)` of `∂_v` for each target slot.
static DERIV: [[(u8, f64); NCOEF]; 3] = build_deriv();

const STARTS: [usize; MAX_DEG as usize + 2] = build_starts();

/// Coefficient slots used in degree block `d` by a jet with `nv` active variables.
#[inline]
fn block(d: usize, nv: u8) -> core::ops::Range<usize> {
    let s = STARTS[d];
    match nv {
        0 => s..s + usize::from(d == 0),
        1 => s..s + 1,
        2 => s..s + d + 1,
        _ => s..STARTS[d + 1],
    }
}

/// Number of coefficient slots a jet of degree `deg` with `nv` variables uses.
#[inline]
fn span(deg: u8, nv: u8) -> usize {
    if nv >= 3 {
        STARTS[deg as usize + 1]
    } else {
        // the last used slot in the last block, plus one
        let d = deg as usize;
        block(d, nv).end.max(if d == 0 { 1 } else { block(d - 1, nv).end })
    }
}

/// Coordinate variable selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    T,
}

impl Var {
    fn slot(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::T => 2,
        }
    }
}

/// Truncated Taylor expansion of a complex function of `(x, y, t)`.
#[derive(Clone, Copy, Debug)]
pub struct Jet {
    c: [C64; NCOEF],
    deg: u8,
    nv: u8,
}

const ZERO: C64 = C64::new(0.0, 0.0);

impl Jet {
    /// A constant; exact to every order.
    pub fn cst(v: C64) -> Self {
        let mut c = [ZERO; NCOEF];
        c[0] = v;
        Jet { c, deg: MAX_DEG, nv: 0 }
    }

    pub fn real(v: f64) -> Self {
        Self::cst(C64::new(v, 0.0))
    }

    pub fn zero() -> Self {
        Self::cst(ZERO)
    }

    pub fn one() -> Self {
        Self::real(1.0)
    }

    /// The coordinate `var` expanded around `at`, truncated at `deg`.
    ///
    /// `nv` is the number of active variables: 2 for `(x, y)` only, 3 when
    /// `t`-derivatives are needed.
    pub fn var(var: Var, at: f64, deg: u8, nv: u8) -> Self {
        assert!(deg <= MAX_DEG, "jet degree {deg} exceeds {MAX_DEG}");
        assert!(var != Var::T || nv >= 3, "t is inactive in a two-variable jet");
        let mut c = [ZERO; NCOEF];
        c[0] = C64::new(at, 0.0);
        if deg >= 1 {
            c[1 + var.slot()] = C64::new(1.0, 0.0);
        }
        Jet { c, deg, nv: nv.max(2) }
    }

    pub fn deg(&self) -> u8 {
        self.deg
    }

    pub fn nv(&self) -> u8 {
        self.nv
    }

    /// Value at the expansion point.
    #[inline]
    pub fn value(&self) -> C64 {
        self.c[0]
    }

    /// Raw Taylor coefficient of `x^a y^b t^c`.
    pub fn coeff(&self, a: usize, b: usize, c: usize) -> C64 {
        if a + b + c > self.deg as usize {
            return ZERO;
        }
        self.c[index_of(a, b, c)]
    }

    /// Partial derivative `∂^(a+b+c) / ∂x^a ∂y^b ∂t^c` at the expansion point.
    pub fn partial(&self, a: usize, b: usize, c: usize) -> Option<C64> {
        if a + b + c > self.deg as usize {
            return None;
        }
        let f = factorial(a) * factorial(b) * factorial(c);
        Some(self.c[index_of(a, b, c)] * f)
    }

    /// Exact derivative along `var`; the result has one degree less.
    pub fn d(&self, var: Var) -> Self {
        let mut c = [ZERO; NCOEF];
        if self.deg == 0 {
            return Jet { c, deg: 0, nv: self.nv };
        }
        if var == Var::T && self.nv < 3 {
            return Jet { c, deg: self.deg - 1, nv: self.nv };
        }
        let deg = self.deg - 1;
        let tab = &DERIV[var.slot()];
        for d in 0..=deg as usize {
            for i in block(d, self.nv) {
                let (src, f) = tab[i];
                c[i] = self.c[src as usize] * f;
            }
        }
        Jet { c, deg, nv: self.nv }
    }

    /// `½(∂x + s·i∂y)` in one pass.
    fn wirtinger(&self, s: f64) -> Self {
        let mut c = [ZERO; NCOEF];
        if self.deg == 0 {
            return Jet { c, deg: 0, nv: self.nv };
        }
        let deg = self.deg - 1;
        let (tx, ty) = (&DERIV[0], &DERIV[1]);
        for d in 0..=deg as usize {
            for i in block(d, self.nv) {
                let (sx, fx) = tx[i];
                let (sy, fy) = ty[i];
                let a = self.c[sx as usize] * fx;
                let b = self.c[sy as usize] * fy;
                c[i] = C64::new(0.5 * (a.re - s * b.im), 0.5 * (a.im + s * b.re));
            }
        }
        Jet { c, deg, nv: self.nv }
    }

    /// Wirtinger `∂ = ½(∂x − i∂y)`.
    pub fn dz(&self) -> Self {
        self.wirtinger(-1.0)
    }

    /// Wirtinger `∂̄ = ½(∂x + i∂y)`.
    pub fn dzb(&self) -> Self {
        self.wirtinger(1.0)
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        for v in out.c.iter_mut().take(span(self.deg, self.nv)) {
            *v = v.conj();
        }
        out
    }

    /// Keeps only the monomials in `t`, i.e. the restriction to `x = x₀, y = y₀`.
    pub fn t_part(&self) -> Self {
        let mut c = [ZERO; NCOEF];
        if self.nv >= 3 {
            for k in 0..=self.deg as usize {
                let i = index_of(0, 0, k);
                c[i] = self.c[i];
            }
        } else {
            c[0] = self.c[0];
        }
        let nv = if self.nv >= 3 { 3 } else { 0 };
        Jet { c, deg: if nv == 0 { MAX_DEG } else { self.deg }, nv }
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.c
            .iter()
            .take(span(self.deg, self.nv))
            .fold(0.0, |m, v| m.max(v.norm()))
    }

    /// Applies a scalar function given its Taylor coefficients `f⁽ⁿ⁾(a₀)/n!` at the value.
    fn compose(&self, taylor: &[C64]) -> Self {
        let mut eps = *self;
        eps.c[0] = ZERO;
        let n = (self.deg as usize).min(taylor.len() - 1);
        let mut r = Jet::cst(taylor[n]);
        for k in (0..n).rev() {
            r = r * eps + taylor[k];
        }
        r.deg = self.deg;
        r.nv = r.nv.max(self.nv);
        r
    }

    pub fn recip(&self) -> Self {
        let a = self.c[0];
        let inv = a.inv();
        let mut tay = [ZERO; MAX_DEG as usize + 1];
        let mut p = inv;
        for v in tay.iter_mut() {
            *v = p;
            p = -p * inv;
        }
        self.compose(&tay)
    }

    pub fn ln(&self) -> Self {
        let a = self.c[0];
        let inv = a.inv();
        let mut tay = [ZERO; MAX_DEG as usize + 1];
        tay[0] = a.ln();
        let mut p = inv;
        for (n, v) in tay.iter_mut().enumerate().skip(1) {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            *v = p * (sign / n as f64);
            p *= inv;
        }
        self.compose(&tay)
    }

    pub fn sqrt(&self) -> Self {
        let a = self.c[0];
        let inv = a.inv();
        let mut tay = [ZERO; MAX_DEG as usize + 1];
        let mut binom = 1.0;
        let mut p = a.sqrt();
        for (n, v) in tay.iter_mut().enumerate() {
            *v = p * binom;
            binom *= (0.5 - n as f64) / (n as f64 + 1.0);
            p *= inv;
        }
        self.compose(&tay)
    }

    fn combine(&self, o: &Self) -> (u8, u8) {
        (self.deg.min(o.deg), self.nv.max(o.nv))
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |a, k| a * k as f64)
}

impl Add for Jet {
    type Output = Jet;
    #[inline]
    fn add(mut self, o: Jet) -> Jet {
        let (deg, nv) = self.combine(&o);
        let n = span(deg, nv);
        for i in 0..n {
            self.c[i] += o.c[i];
        }
        let had = span(self.deg, self.nv);
        if had > n {
            for v in &mut self.c[n..had] {
                *v = ZERO;
            }
        }
        self.deg = deg;
        self.nv = nv;
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    #[inline]
    fn sub(mut self, o: Jet) -> Jet {
        let (deg, nv) = self.combine(&o);
        let n = span(deg, nv);
        for i in 0..n {
            self.c[i] -= o.c[i];
        }
        let had = span(self.deg, self.nv);
        if had > n {
            for v in &mut self.c[n..had] {
                *v = ZERO;
            }
        }
        self.deg = deg;
        self.nv = nv;
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    #[inline]
    fn mul(self, o: Jet) -> Jet {
        let (deg, nv) = self.combine(&o);
        let mut c = [ZERO; NCOEF];
        let d = deg as usize;
        for di in 0..=d {
            for i in block(di, nv) {
                let a = self.c[i];
                if a == ZERO {
                    continue;
                }
                let row = &ADD[i];
                for dj in 0..=d - di {
                    for j in block(dj, nv) {
                        c[row[j] as usize] += a * o.c[j];
                    }
                }
            }
        }
        Jet { c, deg, nv }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        for v in self.c.iter_mut() {
            *v = -*v;
        }
        self
    }
}

impl Add<C64> for Jet {
    type Output = Jet;
    fn add(mut self, o: C64) -> Jet {
        self.c[0] += o;
        self
    }
}

impl Sub<C64> for Jet {
    type Output = Jet;
    fn sub(mut self, o: C64) -> Jet {
        self.c[0] -= o;
        self
    }
}

impl Mul<C64> for Jet {
    type Output = Jet;
    fn mul(mut self, o: C64) -> Jet {
        for v in self.c.iter_mut().take(span(self.deg, self.nv)) {
            *v *= o;
        }
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, o: f64) -> Jet {
        for v in self.c.iter_mut().take(span(self.deg, self.nv)) {
            *v *= o;
        }
        self
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, o: Jet) {
        *self = *self + o;
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, o: Jet) {
        *self = *self - o;
    }
}
