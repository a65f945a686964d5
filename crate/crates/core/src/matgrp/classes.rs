use std::collections::HashSet;

use super::closure::enumerate_group;
use super::group::{GroupSpec, MatKey};
use super::matrix::SquareMatrix;
use super::semisimple;
use crate::error::{Error, Result};

/// A conjugacy class given by a representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    pub group: GroupSpec,
    pub representative: SquareMatrix,
    pub order: u128,
    pub label: String,
    /// Class size, when known.
    pub size: Option<u128>,
}

impl ClassSpec {
    /// Checks membership and computes the order of `rep`.
    pub fn new(group: GroupSpec, rep: SquareMatrix, label: impl Into<String>) -> Result<Self> {
        if !group.contains(&rep)? {
            return Err(Error::NotInGroup(format!(
                "{} is not in {group}",
                group.space().format(&rep)
            )));
        }
        let representative = group.canonical(&rep);
        let order = group.element_order(&representative, u128::MAX)?;
        Ok(ClassSpec {
            group,
            representative,
            order,
            label: label.into(),
            size: None,
        })
    }

    pub fn with_size(mut self, size: u128) -> Self {
        self.size = Some(size);
        self
    }

    pub fn is_central(&self) -> bool {
        self.group.space().is_scalar(&self.representative)
    }
}

/// The class of `x`, by closure under conjugation by the standard
/// generators (and their inverses).
pub fn conjugacy_class(
    spec: &GroupSpec,
    x: &SquareMatrix,
    cap: usize,
) -> Result<Vec<SquareMatrix>> {
    let gens = spec.standard_generators();
    let x = spec.canonical(x);
    let mut seen: HashSet<MatKey> = HashSet::new();
    seen.insert(spec.key(&x));
    let mut out = vec![x];
    let mut head = 0;
    while head < out.len() {
        for g in &gens {
            let y = spec.conjugate(&out[head], g);
            if seen.insert(spec.key(&y)) {
                out.push(y);
                if out.len() > cap {
                    return Err(Error::Overflow { cap: cap as u128 });
                }
            }
        }
        head += 1;
    }
    Ok(out)
}

/// A class found by enumeration, with all its members.
#[derive(Clone, Debug)]
pub struct EnumeratedClass {
    pub class: ClassSpec,
    pub members: Vec<SquareMatrix>,
}

/// All elements of order `r`, partitioned into classes. Classes are listed
/// in order of first appearance in the enumeration and labelled `rA`, `rB`, ...
pub fn elements_of_order(spec: &GroupSpec, r: u128, cap: u128) -> Result<Vec<EnumeratedClass>> {
    let elems = enumerate_group(spec, cap)?;
    let mut pending: HashSet<MatKey> = HashSet::new();
    let mut order_r = Vec::new();
    for e in elems {
        if spec.element_order(&e, u128::MAX)? == r {
            pending.insert(spec.key(&e));
            order_r.push(e);
        }
    }
    let mut out: Vec<EnumeratedClass> = Vec::new();
    for e in &order_r {
        if !pending.contains(&spec.key(e)) {
            continue;
        }
        let members = conjugacy_class(spec, e, usize::MAX)?;
        for m in &members {
            pending.remove(&spec.key(m));
        }
        let label = format!("{r}{}", class_letter(out.len()));
        let class = ClassSpec {
            group: spec.clone(),
            representative: e.clone(),
            order: r,
            label,
            size: Some(members.len() as u128),
        };
        out.push(EnumeratedClass { class, members });
    }
    Ok(out)
}

/// Every conjugacy class of the group, ordered by element order and then
/// by first appearance; labels as in [`elements_of_order`].
pub fn all_classes(spec: &GroupSpec, cap: u128) -> Result<Vec<EnumeratedClass>> {
    let elems = enumerate_group(spec, cap)?;
    let mut pending: HashSet<MatKey> = elems.iter().map(|e| spec.key(e)).collect();
    let mut out: Vec<EnumeratedClass> = Vec::new();
    for e in &elems {
        if !pending.contains(&spec.key(e)) {
            continue;
        }
        let members = conjugacy_class(spec, e, usize::MAX)?;
        for m in &members {
            pending.remove(&spec.key(m));
        }
        let class = ClassSpec::new(spec.clone(), e.clone(), "")?.with_size(members.len() as u128);
        out.push(EnumeratedClass { class, members });
    }
    out.sort_by_key(|c| c.class.order);
    let mut seen = 0;
    for i in 0..out.len() {
        if i > 0 && out[i].class.order != out[i - 1].class.order {
            seen = 0;
        }
        out[i].class.label = format!("{}{}", out[i].class.order, class_letter(seen));
        seen += 1;
    }
    Ok(out)
}

fn class_letter(i: usize) -> String {
    let mut s = String::new();
    let mut i = i;
    loop {
        s.insert(0, (b'A' + (i % 26) as u8) as char);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s
}

/// Classes of elements of order `r` with their sizes: by enumeration when
/// `|G| <= cap`, otherwise from eigenvalue data (semisimple classes, and
/// unipotent classes of `SL2`).
pub fn classes_of_order(spec: &GroupSpec, r: u128, cap: u128) -> Result<Vec<ClassSpec>> {
    if r == 0 {
        return Err(Error::invalid("element order must be positive"));
    }
    match spec.order() {
        Ok(n) if n <= cap => Ok(elements_of_order(spec, r, cap)?
            .into_iter()
            .map(|c| c.class)
            .collect()),
        _ => semisimple::classes_of_order(spec, r),
    }
}
