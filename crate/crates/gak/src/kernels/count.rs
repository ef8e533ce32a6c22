//! Instrumented kernel scalar that tallies every arithmetic operation in a
//! thread-local counter, used to verify the static operation counts of the
//! packed kernels.

use std::cell::Cell;

use super::KernelScalar;

/// Operation tally of one instrumented run. Subtractions count as
/// additions; `sin_cos` counts once as a fused `sincos`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub mul: u32,
    pub add: u32,
    pub div: u32,
    pub sqrt: u32,
    pub acos: u32,
    pub sincos: u32,
    pub neg: u32,
}

impl std::fmt::Display for OpCounts {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (count, name) in [
            (self.mul, "mul"),
            (self.add, "add"),
            (self.div, "div"),
            (self.acos, "acos"),
            (self.sincos, "sincos"),
            (self.sqrt, "sqrt"),
            (self.neg, "neg"),
        ] {
            if count == 0 {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{count} {name}")?;
        }
        if first {
            write!(f, "no ops")?;
        }
        Ok(())
    }
}

thread_local! {
    static MUL: Cell<u32> = const { Cell::new(0) };
    static ADD: Cell<u32> = const { Cell::new(0) };
    static DIV: Cell<u32> = const { Cell::new(0) };
    static SQRT: Cell<u32> = const { Cell::new(0) };
    static ACOS: Cell<u32> = const { Cell::new(0) };
    static SINCOS: Cell<u32> = const { Cell::new(0) };
    static NEG: Cell<u32> = const { Cell::new(0) };
}

fn bump(cell: &'static std::thread::LocalKey<Cell<u32>>) {
    cell.with(|c| c.set(c.get() + 1));
}

fn snapshot() -> OpCounts {
    OpCounts {
        mul: MUL.with(Cell::get),
        add: ADD.with(Cell::get),
        div: DIV.with(Cell::get),
        sqrt: SQRT.with(Cell::get),
        acos: ACOS.with(Cell::get),
        sincos: SINCOS.with(Cell::get),
        neg: NEG.with(Cell::get),
    }
}

fn reset() {
    for cell in [&MUL, &ADD, &DIV, &SQRT, &ACOS, &SINCOS, &NEG] {
        cell.with(|c| c.set(0));
    }
}

/// Runs `f` with a fresh tally and returns its result plus the counts.
pub fn count_ops<R>(f: impl FnOnce() -> R) -> (R, OpCounts) {
    reset();
    let out = f();
    (out, snapshot())
}

/// An `f64` whose arithmetic is tallied.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Counted(pub f64);

impl std::ops::Add for Counted {
    type Output = Counted;
    fn add(self, rhs: Counted) -> Counted {
        bump(&ADD);
        Counted(self.0 + rhs.0)
    }
}
impl std::ops::Sub for Counted {
    type Output = Counted;
    fn sub(self, rhs: Counted) -> Counted {
        bump(&ADD);
        Counted(self.0 - rhs.0)
    }
}
impl std::ops::Mul for Counted {
    type Output = Counted;
    fn mul(self, rhs: Counted) -> Counted {
        bump(&MUL);
        Counted(self.0 * rhs.0)
    }
}
impl std::ops::Div for Counted {
    type Output = Counted;
    fn div(self, rhs: Counted) -> Counted {
        bump(&DIV);
        Counted(self.0 / rhs.0)
    }
}
impl std::ops::Neg for Counted {
    type Output = Counted;
    fn neg(self) -> Counted {
        bump(&NEG);
        Counted(-self.0)
    }
}

impl KernelScalar for Counted {
    fn from_f64(v: f64) -> Self {
        Counted(v)
    }
    fn raw(self) -> f64 {
        self.0
    }
    fn sqrt(self) -> Self {
        bump(&SQRT);
        Counted(self.0.sqrt())
    }
    fn acos(self) -> Self {
        bump(&ACOS);
        Counted(self.0.acos())
    }
    fn sin_cos(self) -> (Self, Self) {
        bump(&SINCOS);
        (Counted(self.0.sin()), Counted(self.0.cos()))
    }
}
