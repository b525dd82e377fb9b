#![allow(dead_code)]

use toric_core::io::{ConfigFile, NestedFile};
use toric_core::{build_nested, Configuration, NestedOrders, NestedSystem};

pub const VERONESE_PAIR: &str = "\
base:
ring: t1 t2
t1^2
t1*t2
t2^2
inner 1:
ring: u1_1 u1_2
u1_1^2
u1_1*u1_2
u1_2^2
inner 2:
ring: u2_1 u2_2
u2_1^2
u2_1*u2_2
u2_2^2
";

pub const SQUARE_OF_THREE: &str = "\
base:
ring: t1
t1^2
inner 1:
ring: u1 u2 u3
u1
u2
u3
";

pub const EXAM: &str = "\
base:
ring: t1 t2 t3
t1*t2
t1*t3
t2*t3
inner 1:
ring: a1 a2 a3
a1*a2
a1*a3
a2*a3
inner 2:
ring: b1 b2 b3
b1*b2
b1*b3
b2*b3
inner 3:
ring: c1 c2 c3
c1*c2
c1*c3
c2*c3
";

/// Inner conic under grevlex, whose initial ideal is generated by a square.
pub const SQUARE_LEAD_INNER: &str = "\
base:
ring: t1
t1^2
inner 1:
ring: u1 u2
u1^2
u1*u2
u2^2
order: grevlex
";

pub fn system(text: &str) -> NestedSystem {
    let f = NestedFile::parse(text).unwrap();
    let base = f.base.to_configuration().unwrap();
    let inner: Vec<Configuration> = f.inner.iter().map(|(c, _)| c.to_configuration().unwrap()).collect();
    let mut orders = NestedOrders::lex(inner.len());
    if let Some(o) = f.base_order {
        orders.base = o;
    }
    for (i, (_, o)) in f.inner.iter().enumerate() {
        if let Some(o) = o {
            orders.inner[i] = o.clone();
        }
    }
    build_nested(base, inner, &orders).unwrap()
}

pub fn config(text: &str) -> Configuration {
    ConfigFile::parse(text).unwrap().to_configuration().unwrap()
}

pub fn all_systems() -> Vec<(&'static str, NestedSystem)> {
    vec![
        ("veronese pair", system(VERONESE_PAIR)),
        ("square of three", system(SQUARE_OF_THREE)),
        ("exam", system(EXAM)),
        ("square lead inner", system(SQUARE_LEAD_INNER)),
    ]
}
