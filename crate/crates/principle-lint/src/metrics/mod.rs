//! Base measurements consumed by the rule catalog. All functions here are
//! pure: they read the immutable model and return values, so callers may
//! evaluate different classes concurrently.

mod clones;
mod scc;

pub use clones::{detect_clones, CloneClass, CloneInstance};
pub use scc::strongly_connected_components;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{CodeModel, EntityId, EntityKind, Modifier, RelationKind};

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("method {0} has no body")]
    NoBody(EntityId),
    #[error("{0} is not a class")]
    NotAClass(EntityId),
    #[error("{0} is not a project type")]
    NotAType(EntityId),
    #[error("unknown entity {0}")]
    UnknownEntity(EntityId),
    #[error("model carries no normalized tokens; clone detection unavailable")]
    TokensUnavailable,
}

/// McCabe complexity of a method body: 1 plus the number of decision points
/// (`if`, `for`, `while`, `do`, `case`, `catch`, `&&`, `||`, `?:`). The
/// frontend counts these while parsing; this reads the stored value.
pub fn cyclomatic_complexity(model: &CodeModel, method: &EntityId) -> Result<u32, MetricError> {
    let entity = model.lookup(method).ok_or_else(|| MetricError::UnknownEntity(method.clone()))?;
    entity.body().map(|b| b.cyclomatic).ok_or_else(|| MetricError::NoBody(method.clone()))
}

/// Depth of the deepest statement: statements directly in the body block are
/// at depth 1; an empty body has depth 0.
pub fn max_nesting_depth(model: &CodeModel, method: &EntityId) -> Result<u32, MetricError> {
    let entity = model.lookup(method).ok_or_else(|| MetricError::UnknownEntity(method.clone()))?;
    entity.body().map(|b| b.max_nesting).ok_or_else(|| MetricError::NoBody(method.clone()))
}

fn require_class<'m>(
    model: &'m CodeModel,
    class: &EntityId,
) -> Result<&'m crate::model::Entity, MetricError> {
    let entity = model.lookup(class).ok_or_else(|| MetricError::UnknownEntity(class.clone()))?;
    if !matches!(entity.kind, EntityKind::Class | EntityKind::Enum) {
        return Err(MetricError::NotAClass(class.clone()));
    }
    Ok(entity)
}

/// The methods LCOM4 clusters: non-static methods of the class that have a
/// body. Constructors carry no instance responsibility of their own and are
/// excluded, as are static helpers.
pub fn lcom4_counted_methods(model: &CodeModel, class: &EntityId) -> Vec<EntityId> {
    model
        .members_of(class)
        .iter()
        .filter(|id| {
            let e = &model.lookup(id).expect("member ids resolve");
            e.kind == EntityKind::Method && !e.is_static() && e.body().is_some()
        })
        .cloned()
        .collect()
}

/// LCOM4: connected components of the graph whose nodes are the counted
/// methods, with an edge when two methods touch a common own field or one
/// calls the other. A cohesive class scores 1; each extra component is an
/// independent responsibility cluster.
pub fn lcom4(model: &CodeModel, class: &EntityId) -> Result<u32, MetricError> {
    require_class(model, class)?;
    let methods = lcom4_counted_methods(model, class);
    let index: BTreeMap<&EntityId, usize> =
        methods.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut parent: Vec<usize> = (0..methods.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };

    let own_fields_used: Vec<BTreeSet<EntityId>> = methods
        .iter()
        .map(|m| {
            model
                .relations_from(m)
                .filter(|r| r.kind == RelationKind::Accesses)
                .filter(|r| model.lookup(&r.to).and_then(|f| f.owner.as_ref()) == Some(class))
                .map(|r| r.to.clone())
                .collect()
        })
        .collect();
    for i in 0..methods.len() {
        for j in (i + 1)..methods.len() {
            if !own_fields_used[i].is_disjoint(&own_fields_used[j]) {
                union(&mut parent, i, j);
            }
        }
        for relation in model.relations_from(&methods[i]) {
            if relation.kind == RelationKind::Calls {
                if let Some(&j) = index.get(&relation.to) {
                    union(&mut parent, i, j);
                }
            }
        }
    }

    let roots: BTreeSet<usize> = (0..methods.len()).map(|i| find(&mut parent, i)).collect();
    Ok(roots.len() as u32)
}

/// Weighted methods per class: the sum of cyclomatic complexities over the
/// class's own methods with bodies. Abstract methods contribute nothing;
/// constructors are not methods and are excluded.
pub fn wmc(model: &CodeModel, class: &EntityId) -> Result<u32, MetricError> {
    require_class(model, class)?;
    Ok(model
        .members_of(class)
        .iter()
        .filter_map(|id| {
            let e = model.lookup(id)?;
            if e.kind != EntityKind::Method {
                return None;
            }
            e.body().map(|b| b.cyclomatic)
        })
        .sum())
}

/// Tight class cohesion: the fraction of visible method pairs that share at
/// least one own field. Visible means non-private, non-static methods.
/// Classes with fewer than two visible methods are vacuously cohesive (1.0).
pub fn tcc(model: &CodeModel, class: &EntityId) -> Result<f64, MetricError> {
    require_class(model, class)?;
    let visible: Vec<EntityId> = model
        .members_of(class)
        .iter()
        .filter(|id| {
            let e = model.lookup(id).expect("member ids resolve");
            e.kind == EntityKind::Method
                && !e.is_static()
                && !e.modifiers.contains(&Modifier::Private)
        })
        .cloned()
        .collect();
    if visible.len() < 2 {
        return Ok(1.0);
    }
    let own_fields: Vec<BTreeSet<EntityId>> = visible
        .iter()
        .map(|m| {
            model
                .relations_from(m)
                .filter(|r| r.kind == RelationKind::Accesses)
                .filter(|r| model.lookup(&r.to).and_then(|f| f.owner.as_ref()) == Some(class))
                .map(|r| r.to.clone())
                .collect()
        })
        .collect();
    let mut connected = 0usize;
    let mut total = 0usize;
    for i in 0..visible.len() {
        for j in (i + 1)..visible.len() {
            total += 1;
            if !own_fields[i].is_disjoint(&own_fields[j]) {
                connected += 1;
            }
        }
    }
    Ok(connected as f64 / total as f64)
}

/// Access to foreign data: distinct fields of other project types the class
/// reads or writes, plus distinct accessor-shaped methods (`get*`, `set*`,
/// `is*`) of other project types it calls. Getter calls count as data access.
pub fn atfd(model: &CodeModel, class: &EntityId) -> Result<u32, MetricError> {
    require_class(model, class)?;
    let mut touched: BTreeSet<EntityId> = BTreeSet::new();
    for member in model.members_of(class) {
        let entity = model.lookup(member).expect("member ids resolve");
        if !entity.kind.is_callable() {
            continue;
        }
        for relation in model.relations_from(member) {
            match relation.kind {
                RelationKind::Accesses => {
                    let Some(owner) = model.declaring_type_of(&relation.to) else { continue };
                    if owner != class && model.lookup(owner).is_some_and(|e| e.kind.is_type()) {
                        touched.insert(relation.to.clone());
                    }
                }
                RelationKind::Calls => {
                    let Some(target) = model.lookup(&relation.to) else { continue };
                    let accessor = ["get", "set", "is"]
                        .iter()
                        .any(|prefix| target.name.starts_with(prefix));
                    if !accessor {
                        continue;
                    }
                    let Some(owner) = model.declaring_type_of(&relation.to) else { continue };
                    if owner != class {
                        touched.insert(relation.to.clone());
                    }
                }
                _ => {}
            }
        }
    }
    Ok(touched.len() as u32)
}

/// Packages of project types the given type depends on, excluding its own
/// package. External types have no package and never contribute.
pub fn efferent_packages(
    model: &CodeModel,
    type_id: &EntityId,
) -> Result<BTreeSet<EntityId>, MetricError> {
    let entity = model.lookup(type_id).ok_or_else(|| MetricError::UnknownEntity(type_id.clone()))?;
    if !entity.kind.is_type() {
        return Err(MetricError::NotAType(type_id.clone()));
    }
    let own_package = model.package_of(type_id).cloned();
    let deps = model.dependencies_of(type_id).map_err(|_| MetricError::UnknownEntity(type_id.clone()))?;
    let mut packages = BTreeSet::new();
    for dep in deps {
        let Some(dep_entity) = model.lookup(&dep) else { continue };
        if !dep_entity.kind.is_type() {
            continue;
        }
        if let Some(package) = model.package_of(&dep) {
            if Some(package) != own_package.as_ref() {
                packages.insert(package.clone());
            }
        }
    }
    Ok(packages)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend;

    fn model_of(source: &str) -> CodeModel {
        let (model, warnings) = frontend::analyze_sources(&[("Test.java".to_owned(), source.to_owned())])
            .expect("fixture parses");
        assert!(warnings.is_empty(), "unexpected warnings: {warnings:?}");
        model
    }

    #[test]
    fn lcom4_of_class_without_counted_methods_is_zero() {
        let model = model_of("package p; class A { int f; }");
        assert_eq!(lcom4(&model, &EntityId::type_("p.A")).unwrap(), 0);
    }

    #[test]
    fn lcom4_merges_methods_sharing_a_field() {
        let model = model_of(
            "package p; class A { int f; void a() { f = 1; } void b() { f = 2; } }",
        );
        assert_eq!(lcom4(&model, &EntityId::type_("p.A")).unwrap(), 1);
    }

    #[test]
    fn lcom4_counts_disjoint_clusters() {
        let model = model_of(
            "package p; class A { int f; int g; void a() { f = 1; } void b() { g = 2; } }",
        );
        assert_eq!(lcom4(&model, &EntityId::type_("p.A")).unwrap(), 2);
    }

    #[test]
    fn lcom4_rejects_interfaces() {
        let model = model_of("package p; interface I { void m(); }");
        assert_eq!(
            lcom4(&model, &EntityId::type_("p.I")),
            Err(MetricError::NotAClass(EntityId::type_("p.I")))
        );
    }

    #[test]
    fn wmc_of_method_free_class_is_zero() {
        let model = model_of("package p; class A { int f; }");
        assert_eq!(wmc(&model, &EntityId::type_("p.A")).unwrap(), 0);
    }

    #[test]
    fn wmc_sums_method_complexities() {
        let model = model_of(
            "package p; class A { void a() { } void b(int x) { if (x > 0) { x = 1; } if (x > 1) { x = 2; } } }",
        );
        // a: 1, b: 1 + two ifs = 3
        assert_eq!(wmc(&model, &EntityId::type_("p.A")).unwrap(), 4);
    }

    #[test]
    fn tcc_is_vacuously_one_for_tiny_classes() {
        let model = model_of("package p; class A { int f; void a() { f = 1; } }");
        assert_eq!(tcc(&model, &EntityId::type_("p.A")).unwrap(), 1.0);
    }

    #[test]
    fn tcc_counts_sharing_pairs() {
        let model = model_of(
            "package p; class A { int f; void a() { f = 1; } void b() { f = 2; } }",
        );
        assert_eq!(tcc(&model, &EntityId::type_("p.A")).unwrap(), 1.0);
    }

    #[test]
    fn tcc_one_connected_pair_of_three() {
        let model = model_of(
            "package p; class A { int f; int g; void a() { f = 1; } void b() { f = 2; } void c() { g = 3; } }",
        );
        let value = tcc(&model, &EntityId::type_("p.A")).unwrap();
        assert!((value - 1.0 / 3.0).abs() < 1e-12, "got {value}");
    }

    #[test]
    fn atfd_ignores_own_fields() {
        let model = model_of(
            "package p; class A { int f; void a() { f = 1; } }",
        );
        assert_eq!(atfd(&model, &EntityId::type_("p.A")).unwrap(), 0);
    }

    #[test]
    fn atfd_counts_foreign_fields_and_accessors_once() {
        let source = r#"
package p;
class B {
    public int x;
    private int y;
    public int getY() { return y; }
}
class A {
    B b;
    void a() { int v = b.x; int w = b.x; int z = b.getY(); }
}
"#;
        let model = model_of(source);
        // b.x twice counts once; getY once: 2 distinct targets.
        assert_eq!(atfd(&model, &EntityId::type_("p.A")).unwrap(), 2);
    }

    #[test]
    fn efferent_packages_excludes_own_and_external() {
        let source_a = "package p; import q.Q; import r.R; class A { Q q; R r; A self; String s; }";
        let source_q = "package q; public class Q { }";
        let source_r = "package r; public class R { }";
        let (model, _) = frontend::analyze_sources(&[
            ("A.java".to_owned(), source_a.to_owned()),
            ("Q.java".to_owned(), source_q.to_owned()),
            ("R.java".to_owned(), source_r.to_owned()),
        ])
        .unwrap();
        let packages = efferent_packages(&model, &EntityId::type_("p.A")).unwrap();
        assert_eq!(
            packages,
            BTreeSet::from([EntityId::package("q"), EntityId::package("r")])
        );
    }
}
