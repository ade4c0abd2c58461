//! Recursive-descent parser for the supported declaration and statement
//! grammar. Anything outside the subset is skipped with a warning; only
//! unbalanced braces and malformed declaration headers are hard errors.

use super::ast::*;
use super::lexer::{Token, TokenClass};
use super::{FrontendError, Warning};

pub struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    file: String,
    warnings: Vec<Warning>,
}

/// Parses one file's token stream into a compilation unit plus warnings for
/// skipped constructs.
pub fn parse_compilation_unit(
    tokens: &[Token],
    file: &str,
) -> Result<(CompilationUnitAst, Vec<Warning>), FrontendError> {
    let mut parser = Parser { tokens, pos: 0, file: file.to_owned(), warnings: Vec::new() };
    let unit = parser.unit()?;
    Ok((unit, parser.warnings))
}

const MODIFIER_WORDS: &[&str] = &["public", "protected", "private", "static", "final", "abstract"];
// Consumed but not tracked.
const IGNORED_MODIFIER_WORDS: &[&str] =
    &["native", "synchronized", "transient", "volatile", "strictfp", "default"];
const PRIMITIVES: &[&str] =
    &["boolean", "byte", "char", "double", "float", "int", "long", "short", "void"];

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&'a Token> {
        self.tokens.get(self.pos + offset)
    }

    fn advance(&mut self) -> Option<&'a Token> {
        let token = self.tokens.get(self.pos);
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn current_line(&self) -> u32 {
        self.peek()
            .or_else(|| self.tokens.last())
            .map(|t| t.line)
            .unwrap_or(1)
    }

    fn last_line(&self) -> u32 {
        self.tokens
            .get(self.pos.saturating_sub(1))
            .or_else(|| self.tokens.last())
            .map(|t| t.line)
            .unwrap_or(1)
    }

    fn error(&self, message: impl Into<String>) -> FrontendError {
        FrontendError::Parse {
            file: self.file.clone(),
            line: self.current_line(),
            message: message.into(),
        }
    }

    fn warn(&mut self, line: u32, message: impl Into<String>) {
        self.warnings.push(Warning {
            message: message.into(),
            file: Some(self.file.clone()),
            line: Some(line),
        });
    }

    fn expect(&mut self, lexeme: &str) -> Result<&'a Token, FrontendError> {
        match self.peek() {
            Some(token) if token.is(lexeme) => Ok(self.advance().unwrap()),
            Some(token) => {
                Err(self.error(format!("expected `{lexeme}`, found `{}`", token.lexeme)))
            }
            None => Err(FrontendError::Parse {
                file: self.file.clone(),
                line: self.last_line(),
                message: format!("expected `{lexeme}`, found end of file"),
            }),
        }
    }

    fn eat(&mut self, lexeme: &str) -> bool {
        if self.peek().is_some_and(|t| t.is(lexeme)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_identifier(&mut self) -> Result<&'a Token, FrontendError> {
        match self.peek() {
            Some(token) if token.class == TokenClass::Identifier => Ok(self.advance().unwrap()),
            Some(token) => Err(self.error(format!("expected identifier, found `{}`", token.lexeme))),
            None => Err(FrontendError::Parse {
                file: self.file.clone(),
                line: self.last_line(),
                message: "expected identifier, found end of file".to_owned(),
            }),
        }
    }

    // ---- compilation unit ------------------------------------------------

    fn unit(&mut self) -> Result<CompilationUnitAst, FrontendError> {
        let mut unit = CompilationUnitAst {
            file: self.file.clone(),
            package: String::new(),
            imports: Vec::new(),
            types: Vec::new(),
        };
        if self.peek().is_some_and(|t| t.is_keyword("package")) {
            self.advance();
            unit.package = self.qualified_name()?;
            self.expect(";")?;
        }
        while self.peek().is_some_and(|t| t.is_keyword("import")) {
            self.advance();
            self.eat("static");
            let mut name = self.qualified_name()?;
            if self.eat(".") {
                self.expect("*")?;
                name.push_str(".*");
            }
            self.expect(";")?;
            unit.imports.push(name);
        }
        while !self.at_end() {
            self.skip_annotations();
            if self.at_end() {
                break;
            }
            if self.eat(";") {
                continue;
            }
            let start = self.pos;
            let mut probe = self.pos;
            while self
                .tokens
                .get(probe)
                .is_some_and(|t| MODIFIER_WORDS.contains(&t.lexeme.as_str())
                    || IGNORED_MODIFIER_WORDS.contains(&t.lexeme.as_str()))
            {
                probe += 1;
            }
            let is_type_decl = self.tokens.get(probe).is_some_and(|t| {
                t.is_keyword("class") || t.is_keyword("interface") || t.is_keyword("enum")
            });
            if is_type_decl {
                let decl = self.type_decl(0)?;
                unit.types.push(decl);
            } else {
                let token = self.tokens[start].clone();
                self.warn(
                    token.line,
                    format!("unsupported top-level construct starting at `{}` skipped", token.lexeme),
                );
                self.skip_to_member_boundary();
                if self.pos == start {
                    self.pos += 1; // never stall
                }
            }
        }
        Ok(unit)
    }

    fn qualified_name(&mut self) -> Result<String, FrontendError> {
        let mut name = self.expect_identifier()?.lexeme.clone();
        while self.peek().is_some_and(|t| t.is("."))
            && self.peek_at(1).is_some_and(|t| t.class == TokenClass::Identifier)
        {
            self.advance();
            name.push('.');
            name.push_str(&self.advance().unwrap().lexeme);
        }
        Ok(name)
    }

    // ---- declarations ----------------------------------------------------

    fn modifiers(&mut self) -> Vec<String> {
        let mut modifiers = Vec::new();
        loop {
            self.skip_annotations();
            match self.peek() {
                Some(t) if MODIFIER_WORDS.contains(&t.lexeme.as_str()) => {
                    modifiers.push(t.lexeme.clone());
                    self.advance();
                }
                Some(t) if IGNORED_MODIFIER_WORDS.contains(&t.lexeme.as_str()) => {
                    self.advance();
                }
                _ => break,
            }
        }
        modifiers
    }

    fn skip_annotations(&mut self) {
        while self.peek().is_some_and(|t| t.is("@")) {
            self.advance();
            if self.peek().is_some_and(|t| t.class == TokenClass::Identifier) {
                let _ = self.qualified_name();
            }
            if self.peek().is_some_and(|t| t.is("(")) {
                self.skip_group("(", ")");
            }
        }
    }

    fn type_decl(&mut self, depth: u32) -> Result<TypeDecl, FrontendError> {
        let modifiers = self.modifiers();
        let keyword = self
            .advance()
            .ok_or_else(|| self.error("expected type declaration, found end of file"))?;
        let kind = match keyword.lexeme.as_str() {
            "class" => TypeKind::Class,
            "interface" => TypeKind::Interface,
            "enum" => TypeKind::Enum,
            other => return Err(self.error(format!("expected type keyword, found `{other}`"))),
        };
        let start_line = keyword.line;
        let name = self.expect_identifier()?.lexeme.clone();
        self.skip_generic_args();

        let mut extends = Vec::new();
        let mut implements = Vec::new();
        if self.peek().is_some_and(|t| t.is_keyword("extends")) {
            self.advance();
            extends.push(self.type_ref()?);
            while self.eat(",") {
                extends.push(self.type_ref()?);
            }
        }
        if self.peek().is_some_and(|t| t.is_keyword("implements")) {
            self.advance();
            implements.push(self.type_ref()?);
            while self.eat(",") {
                implements.push(self.type_ref()?);
            }
        }

        let mut decl = TypeDecl {
            kind,
            name,
            modifiers,
            extends,
            implements,
            fields: Vec::new(),
            methods: Vec::new(),
            enum_constants: Vec::new(),
            nested: Vec::new(),
            start_line,
            end_line: start_line,
        };
        self.expect("{")?;
        if kind == TypeKind::Enum {
            self.enum_constants(&mut decl)?;
        }
        while !self.peek().is_some_and(|t| t.is("}")) {
            if self.at_end() {
                return Err(FrontendError::Parse {
                    file: self.file.clone(),
                    line: self.last_line(),
                    message: format!("missing closing brace for `{}`", decl.name),
                });
            }
            self.member(&mut decl, depth)?;
        }
        decl.end_line = self.expect("}")?.line;
        Ok(decl)
    }

    fn enum_constants(&mut self, decl: &mut TypeDecl) -> Result<(), FrontendError> {
        loop {
            self.skip_annotations();
            match self.peek() {
                Some(t) if t.class == TokenClass::Identifier => {
                    let name = t.lexeme.clone();
                    let line = t.line;
                    self.advance();
                    if self.peek().is_some_and(|t| t.is("(")) {
                        self.skip_group("(", ")");
                    }
                    if self.peek().is_some_and(|t| t.is("{")) {
                        self.warn(line, format!("enum constant `{name}` body skipped"));
                        self.skip_group("{", "}");
                    }
                    decl.enum_constants.push((name, line));
                    if self.eat(",") {
                        continue;
                    }
                    self.eat(";");
                    break;
                }
                _ => {
                    self.eat(";");
                    break;
                }
            }
        }
        Ok(())
    }

    fn member(&mut self, decl: &mut TypeDecl, depth: u32) -> Result<(), FrontendError> {
        if self.eat(";") {
            return Ok(());
        }
        let member_start = self.pos;
        let modifiers = self.modifiers();
        let Some(token) = self.peek() else {
            return Ok(());
        };
        let line = token.line;

        // Nested type declarations: one level deep.
        if token.is_keyword("class") || token.is_keyword("interface") || token.is_keyword("enum") {
            self.pos = member_start;
            if depth == 0 {
                let nested = self.type_decl(depth + 1)?;
                decl.nested.push(nested);
            } else {
                self.warn(line, "deeply nested type skipped");
                self.modifiers();
                self.advance();
                let _ = self.expect_identifier();
                self.skip_to_member_boundary();
            }
            return Ok(());
        }

        // Initializer blocks.
        if token.is("{") {
            self.warn(line, "initializer block skipped");
            self.skip_group("{", "}");
            return Ok(());
        }

        // Generic method type parameters.
        if token.is("<") {
            self.skip_generic_args();
        }

        // Constructor: the type's own name followed by `(`.
        if self.peek().is_some_and(|t| t.lexeme == decl.name)
            && self.peek_at(1).is_some_and(|t| t.is("("))
        {
            let name_token = self.advance().unwrap();
            let method = self.method_rest(
                name_token.lexeme.clone(),
                true,
                modifiers,
                TypeRef { name: "void".to_owned(), line: name_token.line },
                name_token.line,
            )?;
            decl.methods.push(method);
            return Ok(());
        }

        // Otherwise we need `type name` next.
        let member_type = match self.type_ref() {
            Ok(t) => t,
            Err(_) => {
                let lexeme = self.peek().map(|t| t.lexeme.clone()).unwrap_or_default();
                self.warn(line, format!("unsupported member starting at `{lexeme}` skipped"));
                self.skip_to_member_boundary();
                if self.pos == member_start {
                    self.pos += 1;
                }
                return Ok(());
            }
        };
        let Ok(name_token) = self.expect_identifier() else {
            self.warn(line, "unsupported member skipped");
            self.skip_to_member_boundary();
            return Ok(());
        };
        let name = name_token.lexeme.clone();

        if self.peek().is_some_and(|t| t.is("(")) {
            let method = self.method_rest(name, false, modifiers, member_type, line)?;
            decl.methods.push(method);
        } else {
            self.fields_rest(decl, name, modifiers, member_type, line)?;
        }
        Ok(())
    }

    fn method_rest(
        &mut self,
        name: String,
        is_constructor: bool,
        modifiers: Vec<String>,
        return_type: TypeRef,
        start_line: u32,
    ) -> Result<MethodDecl, FrontendError> {
        let params = self.params()?;
        // Array dims on the return type, old style: `int m()[]`.
        while self.peek().is_some_and(|t| t.is("[")) {
            self.advance();
            self.expect("]")?;
        }
        let mut throws = Vec::new();
        if self.peek().is_some_and(|t| t.is_keyword("throws")) {
            self.advance();
            throws.push(self.type_ref()?);
            while self.eat(",") {
                throws.push(self.type_ref()?);
            }
        }
        let mut method = MethodDecl {
            name,
            is_constructor,
            modifiers,
            return_type,
            params,
            throws,
            body: None,
            body_tokens: Vec::new(),
            start_line,
            end_line: start_line,
        };
        if self.eat(";") {
            method.end_line = self.last_line();
            return Ok(method);
        }
        let body_open = self.pos;
        let block = self.block()?;
        let body_close = self.pos - 1; // index of the closing brace
        method.body_tokens = self.tokens[body_open + 1..body_close].to_vec();
        method.end_line = block.end_line;
        method.body = Some(match block.kind {
            StmtKind::Block(stmts) => stmts,
            _ => unreachable!("block() returns a block"),
        });
        Ok(method)
    }

    fn params(&mut self) -> Result<Vec<(String, TypeRef)>, FrontendError> {
        self.expect("(")?;
        let mut params = Vec::new();
        if self.eat(")") {
            return Ok(params);
        }
        loop {
            self.skip_annotations();
            self.eat("final");
            self.skip_annotations();
            let param_type = self.type_ref()?;
            self.eat("...");
            let name = self.expect_identifier()?.lexeme.clone();
            while self.peek().is_some_and(|t| t.is("[")) {
                self.advance();
                self.expect("]")?;
            }
            params.push((name, param_type));
            if self.eat(",") {
                continue;
            }
            self.expect(")")?;
            break;
        }
        Ok(params)
    }

    fn fields_rest(
        &mut self,
        decl: &mut TypeDecl,
        first_name: String,
        modifiers: Vec<String>,
        declared_type: TypeRef,
        start_line: u32,
    ) -> Result<(), FrontendError> {
        let mut name = first_name;
        loop {
            while self.peek().is_some_and(|t| t.is("[")) {
                self.advance();
                self.expect("]")?;
            }
            let mut initializer = Vec::new();
            if self.eat("=") {
                initializer = self.expr_until_comma_or_semicolon()?;
            }
            decl.fields.push(FieldDecl {
                name,
                declared_type: declared_type.clone(),
                modifiers: modifiers.clone(),
                initializer,
                start_line,
                end_line: self.current_line(),
            });
            if self.eat(",") {
                name = self.expect_identifier()?.lexeme.clone();
                continue;
            }
            self.expect(";")?;
            return Ok(());
        }
    }

    // ---- types -----------------------------------------------------------

    fn type_ref(&mut self) -> Result<TypeRef, FrontendError> {
        let first = self
            .peek()
            .ok_or_else(|| self.error("expected type, found end of file"))?;
        let line = first.line;
        let is_primitive = first.class == TokenClass::Keyword
            && PRIMITIVES.contains(&first.lexeme.as_str());
        if !is_primitive && first.class != TokenClass::Identifier {
            return Err(self.error(format!("expected type, found `{}`", first.lexeme)));
        }
        let name = if is_primitive {
            let lexeme = first.lexeme.clone();
            self.advance();
            lexeme
        } else {
            self.qualified_name()?
        };
        self.skip_generic_args();
        while self.peek().is_some_and(|t| t.is("["))
            && self.peek_at(1).is_some_and(|t| t.is("]"))
        {
            self.advance();
            self.advance();
        }
        Ok(TypeRef { name, line })
    }

    /// Consumes a balanced `<...>` group if one starts here. `>>` and `>>>`
    /// close several levels at once.
    fn skip_generic_args(&mut self) {
        if !self.peek().is_some_and(|t| t.is("<")) {
            return;
        }
        let mut depth = 0i32;
        let save = self.pos;
        while let Some(token) = self.peek() {
            match token.lexeme.as_str() {
                "<" => depth += 1,
                ">" => depth -= 1,
                ">>" => depth -= 2,
                ">>>" => depth -= 3,
                ";" | "{" => {
                    // Not generics after all (e.g. a comparison).
                    self.pos = save;
                    return;
                }
                _ => {}
            }
            self.advance();
            if depth <= 0 {
                return;
            }
        }
        self.pos = save;
    }

    // ---- statements --------------------------------------------------------

    fn block(&mut self) -> Result<Stmt, FrontendError> {
        let open = self.expect("{")?;
        let start_line = open.line;
        let mut statements = Vec::new();
        loop {
            if self.peek().is_none() {
                return Err(FrontendError::Parse {
                    file: self.file.clone(),
                    line: self.last_line(),
                    message: "missing closing brace".to_owned(),
                });
            }
            if self.peek().is_some_and(|t| t.is("}")) {
                let close = self.advance().unwrap();
                return Ok(Stmt {
                    kind: StmtKind::Block(statements),
                    line: start_line,
                    end_line: close.line,
                });
            }
            if let Some(stmt) = self.statement()? {
                statements.push(stmt);
            }
        }
    }

    fn statement(&mut self) -> Result<Option<Stmt>, FrontendError> {
        self.skip_annotations();
        let Some(token) = self.peek() else {
            return Err(FrontendError::Parse {
                file: self.file.clone(),
                line: self.last_line(),
                message: "expected statement, found end of file".to_owned(),
            });
        };
        let line = token.line;
        match token.lexeme.as_str() {
            ";" => {
                self.advance();
                Ok(None)
            }
            "{" => Ok(Some(self.block()?)),
            "if" => {
                self.advance();
                let condition = self.paren_region()?;
                let then_branch = Box::new(self.required_statement()?);
                let mut end_line = then_branch.end_line;
                let else_branch = if self.peek().is_some_and(|t| t.is_keyword("else")) {
                    self.advance();
                    let stmt = self.required_statement()?;
                    end_line = stmt.end_line;
                    Some(Box::new(stmt))
                } else {
                    None
                };
                Ok(Some(Stmt {
                    kind: StmtKind::If { condition, then_branch, else_branch },
                    line,
                    end_line,
                }))
            }
            "for" => {
                self.advance();
                let header = self.paren_region()?;
                let body = Box::new(self.required_statement()?);
                let end_line = body.end_line;
                Ok(Some(Stmt { kind: StmtKind::For { header, body }, line, end_line }))
            }
            "while" => {
                self.advance();
                let condition = self.paren_region()?;
                let body = Box::new(self.required_statement()?);
                let end_line = body.end_line;
                Ok(Some(Stmt { kind: StmtKind::While { condition, body }, line, end_line }))
            }
            "do" => {
                self.advance();
                let body = Box::new(self.required_statement()?);
                self.expect("while")?;
                let condition = self.paren_region()?;
                self.expect(";")?;
                let end_line = self.last_line();
                Ok(Some(Stmt { kind: StmtKind::DoWhile { body, condition }, line, end_line }))
            }
            "switch" => Ok(Some(self.switch_statement()?)),
            "try" => Ok(Some(self.try_statement()?)),
            "throw" => {
                self.advance();
                let tokens = self.expr_until_semicolon()?;
                Ok(Some(Stmt { kind: StmtKind::Throw(tokens), line, end_line: self.last_line() }))
            }
            "return" => {
                self.advance();
                let tokens = self.expr_until_semicolon()?;
                Ok(Some(Stmt { kind: StmtKind::Return(tokens), line, end_line: self.last_line() }))
            }
            "break" | "continue" => {
                self.advance();
                if self.peek().is_some_and(|t| t.class == TokenClass::Identifier) {
                    self.advance(); // label
                }
                self.expect(";")?;
                Ok(Some(Stmt { kind: StmtKind::Expr(Vec::new()), line, end_line: line }))
            }
            "assert" => {
                self.advance();
                let tokens = self.expr_until_semicolon()?;
                Ok(Some(Stmt { kind: StmtKind::Expr(tokens), line, end_line: self.last_line() }))
            }
            "synchronized" => {
                self.advance();
                self.warn(line, "synchronized statement treated as plain block");
                if self.peek().is_some_and(|t| t.is("(")) {
                    let _ = self.paren_region()?;
                }
                Ok(Some(self.block()?))
            }
            _ => self.local_decl_or_expr(),
        }
    }

    fn required_statement(&mut self) -> Result<Stmt, FrontendError> {
        let line = self.current_line();
        match self.statement()? {
            Some(stmt) => Ok(stmt),
            None => Ok(Stmt { kind: StmtKind::Block(Vec::new()), line, end_line: line }),
        }
    }

    fn switch_statement(&mut self) -> Result<Stmt, FrontendError> {
        let keyword = self.expect("switch")?;
        let line = keyword.line;
        let scrutinee = self.paren_region()?;
        self.expect("{")?;
        let mut cases: Vec<SwitchCase> = Vec::new();
        loop {
            let Some(token) = self.peek() else {
                return Err(FrontendError::Parse {
                    file: self.file.clone(),
                    line: self.last_line(),
                    message: "missing closing brace in switch".to_owned(),
                });
            };
            if token.is("}") {
                let close = self.advance().unwrap();
                return Ok(Stmt {
                    kind: StmtKind::Switch { scrutinee, cases },
                    line,
                    end_line: close.line,
                });
            }
            if token.is_keyword("case") || token.is_keyword("default") {
                let case_line = token.line;
                let is_default = token.is_keyword("default");
                self.advance();
                let mut label_tokens: Vec<String> = Vec::new();
                while let Some(t) = self.peek() {
                    if t.is(":") {
                        self.advance();
                        break;
                    }
                    if t.is("->") {
                        self.warn(case_line, "arrow switch case skipped");
                        self.skip_to_member_boundary();
                        break;
                    }
                    label_tokens.push(t.lexeme.clone());
                    self.advance();
                }
                cases.push(SwitchCase {
                    label: if is_default { None } else { Some(label_tokens.join("")) },
                    statements: Vec::new(),
                    line: case_line,
                });
                continue;
            }
            let statement = self.statement()?;
            if let Some(statement) = statement {
                match cases.last_mut() {
                    Some(case) => case.statements.push(statement),
                    None => {
                        self.warn(statement.line, "statement before first switch case skipped");
                    }
                }
            }
        }
    }

    fn try_statement(&mut self) -> Result<Stmt, FrontendError> {
        let keyword = self.expect("try")?;
        let line = keyword.line;
        let resources = if self.peek().is_some_and(|t| t.is("(")) {
            self.paren_region()?
        } else {
            Vec::new()
        };
        let body = Box::new(self.block()?);
        let mut catches = Vec::new();
        while self.peek().is_some_and(|t| t.is_keyword("catch")) {
            let catch_line = self.advance().unwrap().line;
            self.expect("(")?;
            self.eat("final");
            let mut exception_types = vec![self.type_ref()?];
            while self.eat("|") {
                exception_types.push(self.type_ref()?);
            }
            let param_name = self.expect_identifier()?.lexeme.clone();
            self.expect(")")?;
            let body = Box::new(self.block()?);
            catches.push(CatchClause { exception_types, param_name, body, line: catch_line });
        }
        let finally_block = if self.peek().is_some_and(|t| t.is_keyword("finally")) {
            self.advance();
            Some(Box::new(self.block()?))
        } else {
            None
        };
        let end_line = finally_block
            .as_ref()
            .map(|b| b.end_line)
            .or_else(|| catches.last().map(|c| c.body.end_line))
            .unwrap_or(body.end_line);
        Ok(Stmt {
            kind: StmtKind::Try { resources, body, catches, finally_block },
            line,
            end_line,
        })
    }

    fn local_decl_or_expr(&mut self) -> Result<Option<Stmt>, FrontendError> {
        let line = self.current_line();
        let save = self.pos;
        self.eat("final");
        if let Ok(declared_type) = self.type_ref() {
            let looks_like_decl = self.peek().is_some_and(|t| t.class == TokenClass::Identifier)
                && self
                    .peek_at(1)
                    .is_some_and(|t| t.is("=") || t.is(";") || t.is(",") || t.is("["));
            if looks_like_decl {
                let mut names = Vec::new();
                let mut initializers = Vec::new();
                loop {
                    let name = self.expect_identifier()?.lexeme.clone();
                    while self.peek().is_some_and(|t| t.is("[")) {
                        self.advance();
                        self.expect("]")?;
                    }
                    names.push(name);
                    if self.eat("=") {
                        initializers.push(self.expr_until_comma_or_semicolon()?);
                    } else {
                        initializers.push(Vec::new());
                    }
                    if self.eat(",") {
                        continue;
                    }
                    self.expect(";")?;
                    break;
                }
                return Ok(Some(Stmt {
                    kind: StmtKind::LocalDecl { declared_type, names, initializers },
                    line,
                    end_line: self.last_line(),
                }));
            }
        }
        self.pos = save;
        let tokens = self.expr_until_semicolon()?;
        Ok(Some(Stmt { kind: StmtKind::Expr(tokens), line, end_line: self.last_line() }))
    }

    // ---- token-region helpers ---------------------------------------------

    /// Consumes `( ... )` and returns the inner tokens.
    fn paren_region(&mut self) -> Result<Vec<Token>, FrontendError> {
        self.expect("(")?;
        let start = self.pos;
        let mut depth = 1i32;
        while let Some(token) = self.peek() {
            match token.lexeme.as_str() {
                "(" => depth += 1,
                ")" => {
                    depth -= 1;
                    if depth == 0 {
                        let region = self.tokens[start..self.pos].to_vec();
                        self.advance();
                        return Ok(region);
                    }
                }
                _ => {}
            }
            self.advance();
        }
        Err(FrontendError::Parse {
            file: self.file.clone(),
            line: self.last_line(),
            message: "unbalanced parentheses".to_owned(),
        })
    }

    fn expr_until_semicolon(&mut self) -> Result<Vec<Token>, FrontendError> {
        self.expr_until(false)
    }

    fn expr_until_comma_or_semicolon(&mut self) -> Result<Vec<Token>, FrontendError> {
        self.expr_until(true)
    }

    /// Collects expression tokens up to a depth-zero `;` (and optionally `,`).
    /// The terminating `;` is consumed only when it ends the statement.
    fn expr_until(&mut self, stop_at_comma: bool) -> Result<Vec<Token>, FrontendError> {
        let start = self.pos;
        let mut paren = 0i32;
        let mut bracket = 0i32;
        let mut brace = 0i32;
        while let Some(token) = self.peek() {
            match token.lexeme.as_str() {
                "(" => paren += 1,
                ")" => {
                    if paren == 0 && bracket == 0 && brace == 0 {
                        break;
                    }
                    paren -= 1;
                }
                "[" => bracket += 1,
                "]" => bracket -= 1,
                "{" => brace += 1,
                "}" => {
                    if brace == 0 {
                        break;
                    }
                    brace -= 1;
                }
                ";" if paren == 0 && bracket == 0 && brace == 0 => {
                    let region = self.tokens[start..self.pos].to_vec();
                    self.advance();
                    return Ok(region);
                }
                "," if stop_at_comma && paren == 0 && bracket == 0 && brace == 0 => {
                    return Ok(self.tokens[start..self.pos].to_vec());
                }
                _ => {}
            }
            self.advance();
        }
        if stop_at_comma && self.pos > start {
            return Ok(self.tokens[start..self.pos].to_vec());
        }
        Err(FrontendError::Parse {
            file: self.file.clone(),
            line: self.last_line(),
            message: "statement not terminated".to_owned(),
        })
    }

    fn skip_group(&mut self, open: &str, close: &str) {
        if !self.peek().is_some_and(|t| t.is(open)) {
            return;
        }
        let mut depth = 0i32;
        while let Some(token) = self.peek() {
            if token.is(open) {
                depth += 1;
            } else if token.is(close) {
                depth -= 1;
            }
            self.advance();
            if depth == 0 {
                return;
            }
        }
    }

    /// Skips forward to a depth-zero `;`, or past one balanced brace group.
    fn skip_to_member_boundary(&mut self) {
        let mut depth = 0i32;
        while let Some(token) = self.peek() {
            match token.lexeme.as_str() {
                "{" | "(" | "[" => depth += 1,
                "}" | ")" | "]" => {
                    if depth == 0 {
                        return; // enclosing close: stop before it
                    }
                    depth -= 1;
                    if depth == 0 && token.is("}") {
                        self.advance();
                        return;
                    }
                }
                ";" if depth == 0 => {
                    self.advance();
                    return;
                }
                _ => {}
            }
            self.advance();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::lexer::tokenize;

    fn parse(source: &str) -> (CompilationUnitAst, Vec<Warning>) {
        let tokens = tokenize(source, "test.java").unwrap();
        parse_compilation_unit(&tokens, "test.java").unwrap()
    }

    fn parse_err(source: &str) -> FrontendError {
        let tokens = tokenize(source, "test.java").unwrap();
        parse_compilation_unit(&tokens, "test.java").unwrap_err()
    }

    #[test]
    fn minimal_unit() {
        let (unit, warnings) = parse("package p; class A {}");
        assert_eq!(unit.package, "p");
        assert_eq!(unit.types.len(), 1);
        assert_eq!(unit.types[0].name, "A");
        assert!(warnings.is_empty());
    }

    #[test]
    fn nested_statement_tree_matches_hand_drawn_shape() {
        let source = r#"
package p;
class A {
    void m(int x) {
        if (x > 0) {
            while (x > 1) {
                x = x - 1;
            }
        }
    }
}
"#;
        let (unit, _) = parse(source);
        let body = unit.types[0].methods[0].body.as_ref().unwrap();
        assert_eq!(body.len(), 1);
        let StmtKind::If { then_branch, else_branch, .. } = &body[0].kind else {
            panic!("expected if, got {:?}", body[0].kind);
        };
        assert!(else_branch.is_none());
        let StmtKind::Block(inner) = &then_branch.kind else { panic!("expected block") };
        assert_eq!(inner.len(), 1);
        assert!(matches!(inner[0].kind, StmtKind::While { .. }));
    }

    #[test]
    fn missing_closing_brace_is_a_parse_error() {
        let err = parse_err("package p; class A { void m() {}");
        match err {
            FrontendError::Parse { line, ref message, .. } => {
                assert_eq!(line, 1);
                assert!(message.contains("closing brace"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn fields_methods_and_constructors_are_separated() {
        let source = r#"
package p;
public class A extends B implements C, D {
    private int count;
    public static final String NAME = "a";
    public A(int count) { this.count = count; }
    int get() { return count; }
    abstract void hook();
}
"#;
        let (unit, _) = parse(source);
        let decl = &unit.types[0];
        assert_eq!(decl.extends.len(), 1);
        assert_eq!(decl.implements.len(), 2);
        assert_eq!(decl.fields.len(), 2);
        assert_eq!(decl.methods.len(), 3);
        assert!(decl.methods[0].is_constructor);
        assert!(decl.methods[2].body.is_none());
    }

    #[test]
    fn unsupported_constructs_warn_but_do_not_fail() {
        let source = r#"
package p;
record Point(int x, int y) {}
class A {
    static { int x = 1; }
    void m() { Runnable r = () -> run(); }
}
"#;
        let (unit, warnings) = parse(source);
        assert_eq!(unit.types.len(), 1);
        assert_eq!(unit.types[0].methods.len(), 1);
        assert!(warnings.iter().any(|w| w.message.contains("top-level")));
        assert!(warnings.iter().any(|w| w.message.contains("initializer block")));
        assert!(warnings.iter().all(|w| w.file.is_some() && w.line.is_some()));
    }

    #[test]
    fn switch_cases_capture_labels() {
        let source = r#"
package p;
class A {
    int pick(int k) {
        switch (k) {
            case 1: return 10;
            case 2: return 20;
            default: return 0;
        }
    }
}
"#;
        let (unit, _) = parse(source);
        let body = unit.types[0].methods[0].body.as_ref().unwrap();
        let StmtKind::Switch { cases, .. } = &body[0].kind else { panic!("expected switch") };
        let labels: Vec<Option<&str>> = cases.iter().map(|c| c.label.as_deref()).collect();
        assert_eq!(labels, vec![Some("1"), Some("2"), None]);
        assert_eq!(cases[0].statements.len(), 1);
    }

    #[test]
    fn enum_constants_become_fields_later() {
        let (unit, _) = parse("package p; enum Color { RED, GREEN, BLUE; int code; }");
        let decl = &unit.types[0];
        assert_eq!(decl.enum_constants.len(), 3);
        assert_eq!(decl.fields.len(), 1);
    }

    #[test]
    fn generics_are_erased() {
        let (unit, _) = parse(
            "package p; class A { java.util.List<java.util.Map<String, Integer>> xs; }",
        );
        assert_eq!(unit.types[0].fields[0].declared_type.name, "java.util.List");
    }

    #[test]
    fn inner_types_parse_one_level() {
        let (unit, warnings) = parse(
            "package p; class Outer { int f; class Inner { void m() {} class Deep {} } }",
        );
        assert_eq!(unit.types[0].nested.len(), 1);
        assert_eq!(unit.types[0].nested[0].name, "Inner");
        assert!(warnings.iter().any(|w| w.message.contains("deeply nested")));
    }
}
