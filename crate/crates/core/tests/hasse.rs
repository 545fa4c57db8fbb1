use std::collections::BTreeMap;

use horochow::catalog::Variety;
use horochow::hasse::{eval_symbolic, QCombo};
use horochow::rational::int;

fn h_power_from_unit(v: &Variety, n: usize, quantum: bool) -> QCombo {
    let d = v.diagram();
    let mut x = QCombo::single((0, d.unit()), int(1));
    for _ in 0..n {
        x = d.chevalley_apply(&x, quantum).unwrap();
    }
    x
}

#[test]
fn sixth_power_of_h_by_chevalley() {
    let v = Variety::builtin("g2").unwrap();
    let x = h_power_from_unit(&v, 6, true);
    assert_eq!(v.diagram().render(&x, false), "56σ6 + 32q·τ'2 + 16q·σ2");
    let classical = h_power_from_unit(&v, 7, false);
    assert_eq!(v.diagram().render(&classical, false), "56σ7");
}

#[test]
fn chevalley_powers_agree_with_ring_powers() {
    for name in ["g2", "spin7"] {
        let v = Variety::builtin(name).unwrap();
        let m = v.model(true).unwrap();
        let h = m.ring.generator("h").unwrap();
        for n in 0..=v.diagram().top_degree() as usize + 2 {
            let expected = h_power_from_unit(&v, n, true);
            let got = m.basis.expand(&m.ring, &m.ring.pow(&h, n as u32).unwrap()).unwrap();
            assert_eq!(got, expected, "{name} h^{n}");
        }
    }
}

fn giambelli(name: &str, quantum: bool, vertex: &str, expected: &str) {
    let v = Variety::builtin(name).unwrap();
    let m = v.model(quantum).unwrap();
    let i = v.diagram().vertex_index(vertex).unwrap();
    let x = eval_symbolic(&m.ring, &BTreeMap::new(), expected).unwrap();
    assert_eq!(m.classes[i], x, "{name} {vertex}");
}

#[test]
fn giambelli_examples() {
    giambelli("g2", false, "t'5", "h^5/2 - 3/2*h^3*s");
    giambelli("spin7", false, "t6m", "(7*h^3*t - h^6)/2");
    giambelli("g2", true, "s6", "h^6/56 + 2/7*q*s - 4/7*q*h^2");
    giambelli("spin7", true, "t7", "h^7/12 - 5/12*q");
}

#[test]
fn spin7_degree_six_difference() {
    let v = Variety::builtin("spin7").unwrap();
    let m = v.model(true).unwrap();
    let syms = m.symbols(&v);
    let x = eval_symbolic(&m.ring, &syms, "h*(t6m - t6p)").unwrap();
    assert_eq!(x, m.ring.generator("q").unwrap());
}

#[test]
fn dual_classes_pair_with_first_classes() {
    let v = Variety::builtin("g2").unwrap();
    let m = v.model(false).unwrap();
    let dual = v.dual().unwrap();
    let dc = m.dual_classes.as_ref().unwrap();
    let d = v.diagram();
    for (i, first) in m.classes.iter().enumerate() {
        let partner = dual.pairing.iter().find(|(_, f)| f == d.id(i)).map(|(u, _)| u).unwrap();
        let ui = dual.diagram.vertex_index(partner).unwrap();
        for (j, other) in dc.iter().enumerate() {
            let x = m.ring.integrate(&m.ring.mult(first, other).unwrap()).unwrap();
            assert_eq!(x, if j == ui { int(1) } else { int(0) });
        }
    }
}
