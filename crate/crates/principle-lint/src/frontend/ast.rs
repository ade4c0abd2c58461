//! Syntax tree for the supported declaration and statement subset.
//! Expressions are kept as raw token runs; the lowering pass scans them for
//! the handful of shapes the rules need (calls, accesses, instantiations,
//! `instanceof`, short-circuit operators).

use super::lexer::Token;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompilationUnitAst {
    pub file: String,
    /// Empty string for the default package.
    pub package: String,
    pub imports: Vec<String>,
    pub types: Vec<TypeDecl>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeKind {
    Class,
    Interface,
    Enum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDecl {
    pub kind: TypeKind,
    pub name: String,
    pub modifiers: Vec<String>,
    pub extends: Vec<TypeRef>,
    pub implements: Vec<TypeRef>,
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<MethodDecl>,
    /// Enum constants, recorded as implicit public static final fields.
    pub enum_constants: Vec<(String, u32)>,
    /// One nesting level of member types.
    pub nested: Vec<TypeDecl>,
    pub start_line: u32,
    pub end_line: u32,
}

/// A type name as written, after generic-argument erasure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeRef {
    /// Dotted name; `[]` pairs are dropped, array-ness is not tracked.
    pub name: String,
    pub line: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDecl {
    pub name: String,
    pub declared_type: TypeRef,
    pub modifiers: Vec<String>,
    /// Initializer tokens, scanned for calls/instantiations.
    pub initializer: Vec<Token>,
    pub start_line: u32,
    pub end_line: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodDecl {
    pub name: String,
    pub is_constructor: bool,
    pub modifiers: Vec<String>,
    /// `void` and constructors use a synthetic `void` return type.
    pub return_type: TypeRef,
    pub params: Vec<(String, TypeRef)>,
    pub throws: Vec<TypeRef>,
    /// None for abstract/interface methods without a body.
    pub body: Option<Vec<Stmt>>,
    /// Raw tokens between the body braces, for clone normalization.
    pub body_tokens: Vec<Token>,
    pub start_line: u32,
    pub end_line: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub line: u32,
    pub end_line: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Block(Vec<Stmt>),
    If {
        condition: Vec<Token>,
        then_branch: Box<Stmt>,
        else_branch: Option<Box<Stmt>>,
    },
    For {
        /// Everything between the header parentheses.
        header: Vec<Token>,
        body: Box<Stmt>,
    },
    While {
        condition: Vec<Token>,
        body: Box<Stmt>,
    },
    DoWhile {
        body: Box<Stmt>,
        condition: Vec<Token>,
    },
    Switch {
        scrutinee: Vec<Token>,
        cases: Vec<SwitchCase>,
    },
    Try {
        /// Tokens of a try-with-resources header, if present.
        resources: Vec<Token>,
        body: Box<Stmt>,
        catches: Vec<CatchClause>,
        finally_block: Option<Box<Stmt>>,
    },
    Throw(Vec<Token>),
    Return(Vec<Token>),
    LocalDecl {
        declared_type: TypeRef,
        names: Vec<String>,
        initializers: Vec<Vec<Token>>,
    },
    /// Expression statement; also covers break/continue/assert.
    Expr(Vec<Token>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchCase {
    /// Lexemes of one `case` label; empty for `default`.
    pub label: Option<String>,
    pub statements: Vec<Stmt>,
    pub line: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatchClause {
    pub exception_types: Vec<TypeRef>,
    pub param_name: String,
    pub body: Box<Stmt>,
    pub line: u32,
}

impl Stmt {
    /// Statements contained directly in this one (bodies of control flow,
    /// block children).
    pub fn children(&self) -> Vec<&Stmt> {
        match &self.kind {
            StmtKind::Block(stmts) => stmts.iter().collect(),
            StmtKind::If { then_branch, else_branch, .. } => {
                let mut out = vec![then_branch.as_ref()];
                if let Some(else_branch) = else_branch {
                    out.push(else_branch.as_ref());
                }
                out
            }
            StmtKind::For { body, .. } | StmtKind::While { body, .. } | StmtKind::DoWhile { body, .. } => {
                vec![body.as_ref()]
            }
            StmtKind::Switch { cases, .. } => {
                cases.iter().flat_map(|c| c.statements.iter()).collect()
            }
            StmtKind::Try { body, catches, finally_block, .. } => {
                let mut out = vec![body.as_ref()];
                out.extend(catches.iter().map(|c| c.body.as_ref()));
                if let Some(finally_block) = finally_block {
                    out.push(finally_block.as_ref());
                }
                out
            }
            _ => Vec::new(),
        }
    }
}
