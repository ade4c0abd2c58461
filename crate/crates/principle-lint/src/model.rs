//! The code model: an immutable store of program entities and the relations
//! between them, extracted from source code by the frontend (or imported from
//! a facts file). Every metric and rule downstream queries this model and
//! nothing else.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Digraph;

/// Stable identifier for one entity in the model.
///
/// Ids are derived from the fully qualified name, the entity kind and (for
/// methods) the declared parameter types, so re-analyzing the same sources
/// always produces the same ids. The kind is encoded as a short prefix:
///
/// - `p:com.app` — package
/// - `t:com.app.Order` — class, interface or enum
/// - `f:com.app.Order#total` — field
/// - `m:com.app.Order#add(Item,int)` — method
/// - `c:com.app.Order#Order()` — constructor
/// - `x:String` — external (unresolved) type
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EntityId(Arc<str>);

impl EntityId {
    pub fn package(qualified: &str) -> Self {
        EntityId(format!("p:{qualified}").into())
    }

    pub fn type_(qualified: &str) -> Self {
        EntityId(format!("t:{qualified}").into())
    }

    pub fn external(name: &str) -> Self {
        EntityId(format!("x:{name}").into())
    }

    pub fn field(owner_qualified: &str, name: &str) -> Self {
        EntityId(format!("f:{owner_qualified}#{name}").into())
    }

    pub fn method(owner_qualified: &str, name: &str, param_types: &[String]) -> Self {
        EntityId(format!("m:{owner_qualified}#{name}({})", param_types.join(",")).into())
    }

    pub fn constructor(owner_qualified: &str, name: &str, param_types: &[String]) -> Self {
        EntityId(format!("c:{owner_qualified}#{name}({})", param_types.join(",")).into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Parses an id string back into an `EntityId`. Used by the facts importer,
    /// which must accept any string that this module can print.
    pub fn from_raw(raw: &str) -> Self {
        EntityId(raw.into())
    }
}

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EntityId({})", self.0)
    }
}

/// What sort of program element an entity is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntityKind {
    Package,
    Class,
    Interface,
    Enum,
    Method,
    Constructor,
    Field,
    Parameter,
    ExternalType,
}

impl EntityKind {
    pub fn is_type(self) -> bool {
        matches!(self, EntityKind::Class | EntityKind::Interface | EntityKind::Enum)
    }

    pub fn is_callable(self) -> bool {
        matches!(self, EntityKind::Method | EntityKind::Constructor)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EntityKind::Package => "package",
            EntityKind::Class => "class",
            EntityKind::Interface => "interface",
            EntityKind::Enum => "enum",
            EntityKind::Method => "method",
            EntityKind::Constructor => "constructor",
            EntityKind::Field => "field",
            EntityKind::Parameter => "parameter",
            EntityKind::ExternalType => "external_type",
        }
    }
}

/// Declaration modifiers tracked by the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modifier {
    Public,
    Protected,
    Private,
    Static,
    Final,
    Abstract,
}

impl Modifier {
    pub fn as_str(self) -> &'static str {
        match self {
            Modifier::Public => "public",
            Modifier::Protected => "protected",
            Modifier::Private => "private",
            Modifier::Static => "static",
            Modifier::Final => "final",
            Modifier::Abstract => "abstract",
        }
    }

    pub fn parse(s: &str) -> Option<Modifier> {
        Some(match s {
            "public" => Modifier::Public,
            "protected" => Modifier::Protected,
            "private" => Modifier::Private,
            "static" => Modifier::Static,
            "final" => Modifier::Final,
            "abstract" => Modifier::Abstract,
            _ => return None,
        })
    }
}

/// A span of source text: file plus inclusive 1-based line range.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SourceLocation {
    pub file: String,
    pub start_line: u32,
    pub end_line: u32,
}

impl SourceLocation {
    pub fn new(file: impl Into<String>, start_line: u32, end_line: u32) -> Self {
        SourceLocation { file: file.into(), start_line, end_line }
    }
}

/// Target of a call site: either a method resolved inside the project or a
/// bare name whose receiver type could not be determined.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CallTarget {
    Resolved(EntityId),
    Unresolved(String),
}

/// Target of a field access site, resolved or not.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AccessTarget {
    Resolved(EntityId),
    Unresolved(String),
}

/// One token of a method body after clone normalization: identifiers collapse
/// to class `ID`, every literal to `LIT`, and keywords/punctuation/operators
/// keep their lexeme. Two bodies are type-2 clones when these sequences match.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NormToken {
    pub class: String,
    pub lexeme: String,
    pub line: u32,
}

impl NormToken {
    /// Equality key for clone matching (line numbers do not participate).
    pub fn key(&self) -> (&str, &str) {
        (&self.class, &self.lexeme)
    }
}

/// Facts extracted from one method body.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BodySummary {
    pub statement_count: u32,
    pub cyclomatic: u32,
    pub max_nesting: u32,
    pub sole_statement_is_throw: bool,
    pub calls: Vec<(CallTarget, u32)>,
    pub accesses: Vec<(AccessTarget, u32)>,
    pub instantiations: Vec<(EntityId, u32)>,
    pub instanceof_tests: Vec<(EntityId, u32)>,
    /// Sorted case-label lists, one per `switch` statement in the body.
    pub switch_case_sets: Vec<(Vec<String>, u32)>,
    pub normalized_tokens: Option<Vec<NormToken>>,
}

impl BodySummary {
    /// Summary of an empty body (`{}`): zero statements, complexity one.
    pub fn empty() -> Self {
        BodySummary { cyclomatic: 1, ..Default::default() }
    }
}

/// Signature-level facts for a method or constructor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodInfo {
    /// Parameters in declaration order: (name, declared type).
    pub params: Vec<(String, EntityId)>,
    pub return_type: EntityId,
    pub throws: Vec<EntityId>,
    /// None for abstract and interface methods.
    pub body: Option<BodySummary>,
    /// The method this one overrides, resolved by name and arity over the
    /// project supertype closure.
    pub overrides: Option<EntityId>,
}

/// Per-kind payload attached to an entity.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub enum EntityDetails {
    #[default]
    None,
    Field {
        declared_type: EntityId,
    },
    Method(MethodInfo),
}

/// One declared program element (or external type placeholder).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entity {
    pub id: EntityId,
    pub kind: EntityKind,
    pub name: String,
    pub qualified_name: String,
    pub modifiers: BTreeSet<Modifier>,
    /// Containing package or type. Absent only for packages and external types.
    pub owner: Option<EntityId>,
    /// Absent for packages and external types.
    pub location: Option<SourceLocation>,
    pub details: EntityDetails,
}

impl Entity {
    pub fn method_info(&self) -> Option<&MethodInfo> {
        match &self.details {
            EntityDetails::Method(info) => Some(info),
            _ => None,
        }
    }

    pub fn field_type(&self) -> Option<&EntityId> {
        match &self.details {
            EntityDetails::Field { declared_type } => Some(declared_type),
            _ => None,
        }
    }

    pub fn body(&self) -> Option<&BodySummary> {
        self.method_info().and_then(|m| m.body.as_ref())
    }

    pub fn is_public(&self) -> bool {
        self.modifiers.contains(&Modifier::Public)
    }

    pub fn is_static(&self) -> bool {
        self.modifiers.contains(&Modifier::Static)
    }

    pub fn is_abstract(&self) -> bool {
        self.modifiers.contains(&Modifier::Abstract)
    }
}

/// The kinds of relations the model records between entities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Extends,
    Implements,
    Calls,
    Accesses,
    Instantiates,
    UsesType,
}

/// A directed edge between two entities.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub from: EntityId,
    pub to: EntityId,
    pub line: Option<u32>,
}

impl Relation {
    pub fn new(kind: RelationKind, from: EntityId, to: EntityId, line: Option<u32>) -> Self {
        Relation { kind, from, to, line }
    }
}

/// Errors raised while validating a model under construction.
#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("duplicate entity id {0}")]
    DuplicateId(EntityId),
    #[error("entity {from} references missing entity {missing}")]
    DanglingReference { from: EntityId, missing: EntityId },
    #[error("containment cycle through {0}")]
    CyclicContainment(EntityId),
    #[error("{0} must {1} an owner")]
    MissingOwner(EntityId, &'static str),
    #[error("unknown entity {0}")]
    UnknownEntity(EntityId),
}

/// Immutable entity/relation store. Built once by [`build_model`], then only
/// read; it is `Send + Sync` and safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeModel {
    project: String,
    entities: BTreeMap<EntityId, Entity>,
    /// Sorted, deduplicated.
    relations: Vec<Relation>,
    /// owner id -> sorted member ids.
    members: BTreeMap<EntityId, Vec<EntityId>>,
    outgoing: BTreeMap<EntityId, Vec<usize>>,
    incoming: BTreeMap<EntityId, Vec<usize>>,
}

/// Validates entities and relations and freezes them into a [`CodeModel`].
///
/// Input order is irrelevant: the model iterates in sorted id order, so two
/// calls with permuted inputs produce equal models.
pub fn build_model(entities: Vec<Entity>, relations: Vec<Relation>) -> Result<CodeModel, ModelError> {
    let mut map: BTreeMap<EntityId, Entity> = BTreeMap::new();
    for entity in entities {
        if map.contains_key(&entity.id) {
            return Err(ModelError::DuplicateId(entity.id));
        }
        map.insert(entity.id.clone(), entity);
    }

    // Owner links: present exactly where the kind requires, resolvable, acyclic.
    for entity in map.values() {
        let standalone = matches!(entity.kind, EntityKind::Package | EntityKind::ExternalType);
        match (&entity.owner, standalone) {
            (Some(_), true) => return Err(ModelError::MissingOwner(entity.id.clone(), "not have")),
            (None, false) => return Err(ModelError::MissingOwner(entity.id.clone(), "have")),
            (Some(owner), false) => {
                if !map.contains_key(owner) {
                    return Err(ModelError::DanglingReference {
                        from: entity.id.clone(),
                        missing: owner.clone(),
                    });
                }
            }
            (None, true) => {}
        }
    }
    for entity in map.values() {
        let mut seen = BTreeSet::new();
        let mut current = entity;
        while let Some(owner) = &current.owner {
            if !seen.insert(current.id.clone()) {
                return Err(ModelError::CyclicContainment(entity.id.clone()));
            }
            current = &map[owner];
        }
        if seen.contains(&current.id) {
            return Err(ModelError::CyclicContainment(entity.id.clone()));
        }
    }

    // Every id an entity mentions must resolve.
    for entity in map.values() {
        let mut check = |target: &EntityId| -> Result<(), ModelError> {
            if map.contains_key(target) {
                Ok(())
            } else {
                Err(ModelError::DanglingReference {
                    from: entity.id.clone(),
                    missing: target.clone(),
                })
            }
        };
        match &entity.details {
            EntityDetails::Field { declared_type } => check(declared_type)?,
            EntityDetails::Method(info) => {
                for (_, ty) in &info.params {
                    check(ty)?;
                }
                check(&info.return_type)?;
                for ty in &info.throws {
                    check(ty)?;
                }
                if let Some(overridden) = &info.overrides {
                    check(overridden)?;
                }
                if let Some(body) = &info.body {
                    for (target, _) in &body.calls {
                        if let CallTarget::Resolved(id) = target {
                            check(id)?;
                        }
                    }
                    for (target, _) in &body.accesses {
                        if let AccessTarget::Resolved(id) = target {
                            check(id)?;
                        }
                    }
                    for (ty, _) in &body.instantiations {
                        check(ty)?;
                    }
                    for (ty, _) in &body.instanceof_tests {
                        check(ty)?;
                    }
                }
            }
            EntityDetails::None => {}
        }
    }

    let mut relations = relations;
    relations.sort();
    relations.dedup();
    for relation in &relations {
        for endpoint in [&relation.from, &relation.to] {
            if !map.contains_key(endpoint) {
                return Err(ModelError::DanglingReference {
                    from: relation.from.clone(),
                    missing: endpoint.clone(),
                });
            }
        }
        debug_assert!(
            match relation.kind {
                RelationKind::Extends | RelationKind::Implements | RelationKind::UsesType =>
                    map[&relation.from].kind.is_type(),
                RelationKind::Calls | RelationKind::Accesses | RelationKind::Instantiates =>
                    map[&relation.from].kind.is_callable(),
            },
            "relation {relation:?} has a source of the wrong kind"
        );
    }

    let mut members: BTreeMap<EntityId, Vec<EntityId>> = BTreeMap::new();
    for entity in map.values() {
        if let Some(owner) = &entity.owner {
            members.entry(owner.clone()).or_default().push(entity.id.clone());
        }
    }
    let mut outgoing: BTreeMap<EntityId, Vec<usize>> = BTreeMap::new();
    let mut incoming: BTreeMap<EntityId, Vec<usize>> = BTreeMap::new();
    for (idx, relation) in relations.iter().enumerate() {
        outgoing.entry(relation.from.clone()).or_default().push(idx);
        incoming.entry(relation.to.clone()).or_default().push(idx);
    }

    Ok(CodeModel {
        project: "project".to_owned(),
        entities: map,
        relations,
        members,
        outgoing,
        incoming,
    })
}

impl CodeModel {
    /// Empty model, mostly useful in tests.
    pub fn empty() -> Self {
        build_model(Vec::new(), Vec::new()).expect("empty model is always valid")
    }

    pub fn with_project_name(mut self, name: impl Into<String>) -> Self {
        self.project = name.into();
        self
    }

    pub fn project(&self) -> &str {
        &self.project
    }

    pub fn lookup(&self, id: &EntityId) -> Option<&Entity> {
        self.entities.get(id)
    }

    pub fn entity(&self, id: &EntityId) -> Result<&Entity, ModelError> {
        self.entities.get(id).ok_or_else(|| ModelError::UnknownEntity(id.clone()))
    }

    /// All entities in sorted id order.
    pub fn entities(&self) -> impl Iterator<Item = &Entity> {
        self.entities.values()
    }

    pub fn entity_count(&self) -> usize {
        self.entities.len()
    }

    /// All relations, sorted by (kind, from, to, line).
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Direct members of a package or type, in sorted id order.
    pub fn members_of(&self, owner: &EntityId) -> &[EntityId] {
        self.members.get(owner).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn relations_from(&self, id: &EntityId) -> impl Iterator<Item = &Relation> {
        self.outgoing
            .get(id)
            .into_iter()
            .flatten()
            .map(move |&idx| &self.relations[idx])
    }

    pub fn relations_to(&self, id: &EntityId) -> impl Iterator<Item = &Relation> {
        self.incoming
            .get(id)
            .into_iter()
            .flatten()
            .map(move |&idx| &self.relations[idx])
    }

    /// Project types (classes, interfaces, enums) in sorted id order.
    pub fn types(&self) -> impl Iterator<Item = &Entity> {
        self.entities().filter(|e| e.kind.is_type())
    }

    pub fn packages(&self) -> impl Iterator<Item = &Entity> {
        self.entities().filter(|e| e.kind == EntityKind::Package)
    }

    /// The package an entity ultimately lives in, following owner links.
    pub fn package_of(&self, id: &EntityId) -> Option<&EntityId> {
        let mut current = self.lookup(id)?;
        loop {
            if current.kind == EntityKind::Package {
                return Some(&current.id);
            }
            current = self.lookup(current.owner.as_ref()?)?;
        }
    }

    /// The type that declares an entity (itself, for types).
    pub fn declaring_type_of(&self, id: &EntityId) -> Option<&EntityId> {
        let mut current = self.lookup(id)?;
        loop {
            if current.kind.is_type() {
                return Some(&current.id);
            }
            current = self.lookup(current.owner.as_ref()?)?;
        }
    }

    /// Direct project supertypes (extends + implements targets), sorted.
    pub fn supertypes_of(&self, type_id: &EntityId) -> Vec<&EntityId> {
        self.relations_from(type_id)
            .filter(|r| matches!(r.kind, RelationKind::Extends | RelationKind::Implements))
            .map(|r| &r.to)
            .collect()
    }

    /// Transitive supertype closure in breadth-first order, excluding the
    /// starting type. External supertypes appear but are not expanded.
    pub fn supertype_closure(&self, type_id: &EntityId) -> Vec<EntityId> {
        let mut seen: BTreeSet<EntityId> = BTreeSet::new();
        let mut queue: Vec<EntityId> = vec![type_id.clone()];
        let mut order = Vec::new();
        while !queue.is_empty() {
            let mut next = Vec::new();
            for current in queue {
                for sup in self.supertypes_of(&current) {
                    if seen.insert(sup.clone()) {
                        order.push(sup.clone());
                        if self.lookup(sup).map(|e| e.kind.is_type()).unwrap_or(false) {
                            next.push(sup.clone());
                        }
                    }
                }
            }
            next.sort();
            queue = next;
        }
        order
    }

    /// Every project type the given type depends on: supertype and used types
    /// plus the owners of everything its methods call, access or instantiate.
    /// External types are included (their kind flags them); the type itself
    /// never appears.
    pub fn dependencies_of(&self, type_id: &EntityId) -> Result<BTreeSet<EntityId>, ModelError> {
        let entity = self.entity(type_id)?;
        if !entity.kind.is_type() {
            return Err(ModelError::UnknownEntity(type_id.clone()));
        }
        let mut deps: BTreeSet<EntityId> = BTreeSet::new();
        for relation in self.relations_from(type_id) {
            if matches!(
                relation.kind,
                RelationKind::Extends | RelationKind::Implements | RelationKind::UsesType
            ) {
                deps.insert(relation.to.clone());
            }
        }
        for member in self.members_of(type_id) {
            let member_entity = &self.entities[member];
            if !member_entity.kind.is_callable() {
                continue;
            }
            for relation in self.relations_from(member) {
                let target_type = match relation.kind {
                    RelationKind::Instantiates => Some(relation.to.clone()),
                    RelationKind::Calls | RelationKind::Accesses => {
                        self.declaring_type_of(&relation.to).cloned()
                    }
                    _ => None,
                };
                if let Some(ty) = target_type {
                    deps.insert(ty);
                }
            }
        }
        deps.remove(type_id);
        Ok(deps)
    }

    /// Package-level dependency graph: an edge `p -> q` whenever a type in `p`
    /// depends on a project type in `q`. External targets and intra-package
    /// edges are excluded; every project package is a node.
    pub fn package_dependency_graph(&self) -> Digraph<EntityId> {
        let mut graph = Digraph::new();
        for package in self.packages() {
            graph.add_node(package.id.clone());
        }
        for ty in self.types() {
            let Some(from_pkg) = self.package_of(&ty.id).cloned() else { continue };
            let deps = self.dependencies_of(&ty.id).expect("types() yields valid type ids");
            for dep in deps {
                let Some(dep_entity) = self.lookup(&dep) else { continue };
                if !dep_entity.kind.is_type() {
                    continue;
                }
                let Some(to_pkg) = self.package_of(&dep).cloned() else { continue };
                if to_pkg != from_pkg {
                    graph.add_edge(from_pkg.clone(), to_pkg);
                }
            }
        }
        graph
    }

    /// Resolves a simple or qualified type name as written in source.
    ///
    /// Order: exact qualified match, then explicit import, then same package,
    /// then wildcard import, then an `ExternalType` fallback. Never fails; the
    /// returned id may name an external type that is not materialized in this
    /// model.
    pub fn resolve_type_name(&self, name: &str, context: &ResolutionContext) -> EntityId {
        let lookup = |qualified: &str| -> Option<EntityId> {
            let id = EntityId::type_(qualified);
            self.entities.contains_key(&id).then_some(id)
        };
        resolve_with(name, context, &lookup)
    }
}

/// Where a type name occurs: its package and the file's imports.
#[derive(Debug, Clone, Default)]
pub struct ResolutionContext {
    pub package: String,
    pub imports: Vec<String>,
}

/// Shared resolution order used both by [`CodeModel::resolve_type_name`] and
/// by the frontend before the model exists. `lookup` answers whether a
/// qualified name is a known project type.
pub(crate) fn resolve_with(
    name: &str,
    context: &ResolutionContext,
    lookup: &dyn Fn(&str) -> Option<EntityId>,
) -> EntityId {
    if name.contains('.') {
        if let Some(id) = lookup(name) {
            return id;
        }
    }
    let simple_head = name.split('.').next().unwrap_or(name);
    for import in &context.imports {
        if import.ends_with(".*") {
            continue;
        }
        if import == name
            || import.rsplit('.').next() == Some(name)
            || import.rsplit('.').next() == Some(simple_head)
        {
            let candidate = if import.rsplit('.').next() == Some(simple_head) && name.contains('.')
            {
                // import q.Outer; name Outer.Inner -> q.Outer.Inner
                let prefix = import.rsplit_once('.').map(|(p, _)| p).unwrap_or("");
                format!("{prefix}.{name}")
            } else {
                import.clone()
            };
            if let Some(id) = lookup(&candidate) {
                return id;
            }
        }
    }
    let in_package = if context.package.is_empty() {
        name.to_owned()
    } else {
        format!("{}.{}", context.package, name)
    };
    if let Some(id) = lookup(&in_package) {
        return id;
    }
    for import in &context.imports {
        if let Some(package) = import.strip_suffix(".*") {
            if let Some(id) = lookup(&format!("{package}.{name}")) {
                return id;
            }
        }
    }
    EntityId::external(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn package(qualified: &str) -> Entity {
        Entity {
            id: EntityId::package(qualified),
            kind: EntityKind::Package,
            name: qualified.rsplit('.').next().unwrap_or(qualified).to_owned(),
            qualified_name: qualified.to_owned(),
            modifiers: BTreeSet::new(),
            owner: None,
            location: None,
            details: EntityDetails::None,
        }
    }

    fn class(qualified: &str, package_qn: &str) -> Entity {
        Entity {
            id: EntityId::type_(qualified),
            kind: EntityKind::Class,
            name: qualified.rsplit('.').next().unwrap().to_owned(),
            qualified_name: qualified.to_owned(),
            modifiers: BTreeSet::from([Modifier::Public]),
            owner: Some(EntityId::package(package_qn)),
            location: Some(SourceLocation::new("Test.java", 1, 10)),
            details: EntityDetails::None,
        }
    }

    fn external(name: &str) -> Entity {
        Entity {
            id: EntityId::external(name),
            kind: EntityKind::ExternalType,
            name: name.to_owned(),
            qualified_name: name.to_owned(),
            modifiers: BTreeSet::new(),
            owner: None,
            location: None,
            details: EntityDetails::None,
        }
    }

    #[test]
    fn empty_input_builds_empty_model() {
        let model = build_model(vec![], vec![]).unwrap();
        assert_eq!(model.entity_count(), 0);
        assert!(model.relations().is_empty());
    }

    #[test]
    fn relation_to_missing_entity_is_dangling() {
        let err = build_model(
            vec![package("p"), class("p.A", "p")],
            vec![Relation::new(
                RelationKind::UsesType,
                EntityId::type_("p.A"),
                EntityId::type_("p.X"),
                None,
            )],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::DanglingReference { .. }));
    }

    #[test]
    fn duplicate_id_is_rejected() {
        let err = build_model(vec![package("p"), package("p")], vec![]).unwrap_err();
        assert_eq!(err, ModelError::DuplicateId(EntityId::package("p")));
    }

    #[test]
    fn cyclic_containment_is_rejected() {
        let mut a = class("p.A", "p");
        let mut b = class("p.B", "p");
        a.owner = Some(b.id.clone());
        b.owner = Some(a.id.clone());
        let err = build_model(vec![a, b], vec![]).unwrap_err();
        assert!(matches!(err, ModelError::CyclicContainment(_)));
    }

    #[test]
    fn uses_type_shows_up_in_dependencies() {
        let model = build_model(
            vec![package("p"), package("q"), class("p.A", "p"), class("q.B", "q")],
            vec![Relation::new(
                RelationKind::UsesType,
                EntityId::type_("p.A"),
                EntityId::type_("q.B"),
                None,
            )],
        )
        .unwrap();
        let deps = model.dependencies_of(&EntityId::type_("p.A")).unwrap();
        assert_eq!(deps, BTreeSet::from([EntityId::type_("q.B")]));
    }

    #[test]
    fn dependencies_of_isolated_class_is_empty() {
        let model = build_model(vec![package("p"), class("p.A", "p")], vec![]).unwrap();
        assert!(model.dependencies_of(&EntityId::type_("p.A")).unwrap().is_empty());
    }

    #[test]
    fn dependencies_include_externals() {
        let model = build_model(
            vec![package("p"), class("p.A", "p"), external("String")],
            vec![Relation::new(
                RelationKind::UsesType,
                EntityId::type_("p.A"),
                EntityId::external("String"),
                None,
            )],
        )
        .unwrap();
        let deps = model.dependencies_of(&EntityId::type_("p.A")).unwrap();
        assert_eq!(deps, BTreeSet::from([EntityId::external("String")]));
    }

    #[test]
    fn dependencies_of_unknown_entity_errors() {
        let model = CodeModel::empty();
        assert!(model.dependencies_of(&EntityId::type_("p.A")).is_err());
    }

    #[test]
    fn package_graph_counts_all_packages_without_cross_edges() {
        let model = build_model(
            vec![package("p"), package("q"), class("p.A", "p"), class("p.B", "p")],
            vec![Relation::new(
                RelationKind::UsesType,
                EntityId::type_("p.A"),
                EntityId::type_("p.B"),
                None,
            )],
        )
        .unwrap();
        let graph = model.package_dependency_graph();
        assert_eq!(graph.node_count(), 2);
        assert_eq!(graph.edge_count(), 0, "intra-package dependency makes no edge");
    }

    #[test]
    fn package_graph_follows_cross_package_uses() {
        let model = build_model(
            vec![
                package("p"),
                package("q"),
                class("p.A", "p"),
                class("q.B", "q"),
                class("p.C", "p"),
            ],
            vec![
                Relation::new(RelationKind::UsesType, EntityId::type_("p.A"), EntityId::type_("q.B"), None),
                Relation::new(RelationKind::UsesType, EntityId::type_("q.B"), EntityId::type_("p.C"), None),
            ],
        )
        .unwrap();
        let graph = model.package_dependency_graph();
        let edges: Vec<_> = graph.edges().collect();
        assert_eq!(
            edges,
            vec![
                (&EntityId::package("p"), &EntityId::package("q")),
                (&EntityId::package("q"), &EntityId::package("p")),
            ]
        );
    }

    #[test]
    fn resolution_prefers_explicit_import() {
        let model = build_model(
            vec![package("p"), package("q"), class("p.B", "p"), class("q.B", "q")],
            vec![],
        )
        .unwrap();
        let ctx = ResolutionContext { package: "p".into(), imports: vec!["q.B".into()] };
        assert_eq!(model.resolve_type_name("B", &ctx), EntityId::type_("q.B"));
    }

    #[test]
    fn resolution_falls_back_to_same_package_then_external() {
        let model = build_model(vec![package("p"), class("p.B", "p")], vec![]).unwrap();
        let ctx = ResolutionContext { package: "p".into(), imports: vec![] };
        assert_eq!(model.resolve_type_name("B", &ctx), EntityId::type_("p.B"));
        assert_eq!(model.resolve_type_name("String", &ctx), EntityId::external("String"));
    }

    #[test]
    fn build_is_deterministic_under_input_permutation() {
        let entities = vec![package("p"), package("q"), class("p.A", "p"), class("q.B", "q")];
        let relations = vec![
            Relation::new(RelationKind::UsesType, EntityId::type_("p.A"), EntityId::type_("q.B"), None),
            Relation::new(RelationKind::Extends, EntityId::type_("p.A"), EntityId::type_("q.B"), None),
        ];
        let forward = build_model(entities.clone(), relations.clone()).unwrap();
        let mut reversed_entities = entities;
        reversed_entities.reverse();
        let mut reversed_relations = relations;
        reversed_relations.reverse();
        let backward = build_model(reversed_entities, reversed_relations).unwrap();
        assert_eq!(forward, backward);
    }
}
