use super::{Function, FunctionFamily};
use crate::error::Result;

/// `λM`, names kept.
pub fn scale(lambda: f64, m: &FunctionFamily) -> Result<FunctionFamily> {
    let fs = m
        .functions()
        .iter()
        .map(|f| Function::new(f.name.clone(), f.values.iter().map(|v| v.scale(lambda)).collect()))
        .collect();
    FunctionFamily::new(m.domain().clone(), m.space(), fs)
}

fn pairwise(
    m: &FunctionFamily,
    n: &FunctionFamily,
    name: impl Fn(&str, &str) -> String,
    op: impl Fn(&crate::normed::Vector, &crate::normed::Vector) -> crate::normed::Vector,
) -> Result<FunctionFamily> {
    m.check_compatible(n.domain(), n.space())?;
    let mut fs = Vec::with_capacity(m.len() * n.len());
    for f in m.functions() {
        for g in n.functions() {
            let values = f.values.iter().zip(&g.values).map(|(a, b)| op(a, b)).collect();
            fs.push(Function::new(name(&f.name, &g.name), values));
        }
    }
    FunctionFamily::new(m.domain().clone(), m.space(), fs)
}

/// `M + N = {f + g}`, row-major over `(M, N)`.
pub fn minkowski_sum(m: &FunctionFamily, n: &FunctionFamily) -> Result<FunctionFamily> {
    pairwise(m, n, |a, b| format!("{a}+{b}"), |a, b| a + b)
}

/// `λM + (1 − λ)N`, row-major over `(M, N)`.
pub fn convex_combination(lambda: f64, m: &FunctionFamily, n: &FunctionFamily) -> Result<FunctionFamily> {
    pairwise(
        m,
        n,
        |a, b| format!("{lambda}*{a}+{}*{b}", 1.0 - lambda),
        |a, b| a.scale(lambda).axpy(1.0 - lambda, b),
    )
}

/// `M ∪ N`; functions of `N` equal to an earlier one are dropped, clashing
/// names get a numeric suffix.
pub fn union(m: &FunctionFamily, n: &FunctionFamily) -> Result<FunctionFamily> {
    m.check_compatible(n.domain(), n.space())?;
    let mut fs: Vec<Function> = m.functions().to_vec();
    for g in n.functions() {
        if fs.iter().any(|f| f.values == g.values) {
            continue;
        }
        let mut name = g.name.clone();
        let mut suffix = 2;
        while fs.iter().any(|f| f.name == name) {
            name = format!("{}#{suffix}", g.name);
            suffix += 1;
        }
        fs.push(Function::new(name, g.values.clone()));
    }
    FunctionFamily::new(m.domain().clone(), m.space(), fs)
}
