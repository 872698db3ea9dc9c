"""Recursive-descent Java parser producing canonical typed ASTs.

The grammar targets Java 8. Every produced node carries one of the 72
canonical node types; purely syntactic trivia (braces, punctuation,
keywords that only shape the grammar) produce no nodes. Names, literal
text and operators live in node attrs, never as child nodes, matching
the taxonomy (which has no identifier type).

Child lists are in source order and `source_order` is the index of the
node's first token, so leaves sorted by source_order reproduce token
order.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

from .lexing import (
    JavaSyntaxError,
    MODIFIER_KEYWORDS,
    PRIMITIVE_TYPES,
    Token,
    strip_comments,
    tokenize,
)
from .taxonomy import NodeType, node_type


@dataclass(frozen=True)
class AstNode:
    """One syntax node; children are ids into the owning SourceUnit."""

    id: int
    node_type: NodeType
    children: tuple[int, ...]
    source_order: int
    attrs: dict[str, str] = field(default_factory=dict)

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class SourceUnit:
    """A parsed file: node arena (pre-order ids), root is id 0."""

    path: str
    root: int
    nodes: tuple[AstNode, ...]
    parents: tuple[int, ...]  # parent id per node; -1 for the root
    parse_warnings: tuple[str, ...] = ()

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def leaves_in_source_order(self) -> list[AstNode]:
        return sorted((n for n in self.nodes if n.is_leaf), key=lambda n: n.source_order)

    def subtree_ids(self, node_id: int) -> set[int]:
        out: set[int] = set()
        stack = [node_id]
        while stack:
            nid = stack.pop()
            out.add(nid)
            stack.extend(self.nodes[nid].children)
        return out

    def to_debug_json(self) -> str:
        doc = {
            "path": self.path,
            "nodes": [
                {
                    "id": n.id,
                    "type": n.node_type.name,
                    "children": list(n.children),
                    "source_order": n.source_order,
                }
                for n in self.nodes
            ],
        }
        return json.dumps(doc, sort_keys=True)


class _N:
    """Mutable parse-time node; flattened into AstNodes afterwards."""

    __slots__ = ("type_name", "start", "children", "attrs")

    def __init__(self, type_name: str, start: int, children=None, **attrs: str):
        self.type_name = type_name
        self.start = start
        self.children: list[_N] = list(children or [])
        self.attrs = {k: v for k, v in attrs.items() if v}


_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<="}
_STATEMENT_KEYWORDS = {
    "if", "while", "do", "for", "switch", "try", "return", "throw", "break",
    "continue", "assert", "synchronized",
}
_LITERAL_KINDS = {"int", "float", "char", "string"}
# Tokens that may legally follow a reference-type cast (JLS 15.16:
# UnaryExpressionNotPlusMinus or a lambda).
_REF_CAST_FOLLOW = {"!", "~", "(", "this", "super", "new"}


class _Parser:
    def __init__(self, tokens: list[Token], path: str):
        self.toks = tokens
        self.pos = 0
        self.path = path
        self.warnings: list[str] = []

    # -- token plumbing ------------------------------------------------

    def cur(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        t = self.cur()
        return t.text == text and t.kind in ("op", "keyword")

    def at_ident(self) -> bool:
        return self.cur().kind == "ident"

    def accept(self, text: str) -> Token | None:
        if self.at(text):
            t = self.cur()
            self.pos += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            self.fail(f"expected {text!r}, found {self.cur().text!r}")
        return t

    def expect_ident(self) -> Token:
        t = self.cur()
        if t.kind != "ident":
            self.fail(f"expected identifier, found {t.text!r}")
        self.pos += 1
        return t

    def fail(self, message: str):
        t = self.cur()
        raise JavaSyntaxError(message, t.line, t.col, self.path)

    def adjacent(self, a: Token, b: Token) -> bool:
        return b.index == a.index + 1 and b.line == a.line and b.col == a.col + len(a.text)

    def gt_run(self) -> tuple[int, bool]:
        """Count adjacent '>' tokens at the cursor and whether '=' follows."""
        count = 0
        tok = self.cur()
        while tok.text == ">" and tok.kind == "op" and count < 3:
            count += 1
            nxt = self.peek(count)
            if not self.adjacent(tok, nxt):
                return count, False
            if nxt.text == "=" and nxt.kind == "op":
                return count, True
            if nxt.text != ">":
                return count, False
            tok = nxt
        return count, False

    # -- compilation units ---------------------------------------------

    def parse_compilation_unit(self) -> _N:
        children: list[_N] = []
        mark = self.pos
        annotations = self.parse_annotations()
        if self.at("package"):
            start = annotations[0].start if annotations else self.cur().index
            self.expect("package")
            name = self.qualified_name_text()
            self.expect(";")
            children.append(_N("PackageDeclaration", start, annotations, name=name))
        else:
            self.pos = mark  # annotations belong to the first type declaration
        while self.at("import"):
            children.append(self.parse_import())
        while self.cur().kind != "eof":
            if self.accept(";"):
                continue
            children.append(self.parse_type_declaration())
        return _N("CompilationUnit", 0, children)

    def parse_member_sequence(self) -> _N:
        """Fallback for snippets that are bare class members, not files."""
        members: list[_N] = []
        while self.cur().kind != "eof":
            if self.accept(";"):
                continue
            members.append(self.parse_class_member(kind="class"))
        if not members:
            self.fail("empty member sequence")
        return _N("CompilationUnit", 0, members)

    def parse_import(self) -> _N:
        start = self.expect("import").index
        static = bool(self.accept("static"))
        name = self.qualified_name_text()
        wildcard = False
        if self.accept("."):
            self.expect("*")
            wildcard = True
        self.expect(";")
        return _N(
            "Import", start, name=name,
            static="true" if static else "", wildcard="true" if wildcard else "",
        )

    def qualified_name_text(self) -> str:
        parts = [self.expect_ident().text]
        while self.at(".") and self.peek().kind == "ident":
            self.pos += 1
            parts.append(self.expect_ident().text)
        return ".".join(parts)

    # -- declarations ----------------------------------------------------

    def parse_annotations(self) -> list[_N]:
        out = []
        while self.at("@") and self.peek().text != "interface":
            out.append(self.parse_annotation())
        return out

    def parse_annotation(self) -> _N:
        start = self.expect("@").index
        name = self.qualified_name_text()
        children: list[_N] = []
        if self.accept("("):
            if not self.at(")"):
                if self.at_ident() and self.peek().text == "=" and self.peek().kind == "op":
                    children.append(self.parse_element_value_pair())
                    while self.accept(","):
                        children.append(self.parse_element_value_pair())
                else:
                    children.append(self.parse_element_value())
            self.expect(")")
        return _N("Annotation", start, children, name=name)

    def parse_element_value_pair(self) -> _N:
        name_tok = self.expect_ident()
        self.expect("=")
        value = self.parse_element_value()
        return _N("ElementValuePair", name_tok.index, [value], name=name_tok.text)

    def parse_element_value(self) -> _N:
        if self.at("{"):
            start = self.expect("{").index
            values = []
            while not self.at("}"):
                values.append(self.parse_element_value())
                if not self.accept(","):
                    break
            self.expect("}")
            return _N("ElementArrayValue", start, values)
        if self.at("@"):
            return self.parse_annotation()
        return self.parse_ternary()

    def parse_modifier_nodes(self) -> list[_N]:
        """Annotations and modifier keywords, as nodes, in source order."""
        out: list[_N] = []
        while True:
            if self.at("@") and self.peek().text != "interface":
                out.append(self.parse_annotation())
                continue
            t = self.cur()
            if t.kind == "keyword" and t.text in MODIFIER_KEYWORDS:
                self.pos += 1
                out.append(_N("Modifier", t.index, value=t.text))
                continue
            return out

    def parse_type_declaration(self) -> _N:
        start = self.cur().index
        mods = self.parse_modifier_nodes()
        if mods:
            start = mods[0].start
        if self.at("class"):
            return self.parse_class_declaration(mods, start)
        if self.at("interface"):
            return self.parse_interface_declaration(mods, start)
        if self.at("enum"):
            return self.parse_enum_declaration(mods, start)
        if self.at("@") and self.peek().text == "interface":
            return self.parse_annotation_declaration(mods, start)
        self.fail("expected a type declaration")

    def parse_class_declaration(self, mods: list[_N], start: int) -> _N:
        self.expect("class")
        name = self.expect_ident().text
        children = list(mods)
        children.extend(self.parse_type_parameters())
        if self.accept("extends"):
            children.append(self.parse_type())
        if self.accept("implements"):
            children.append(self.parse_type())
            while self.accept(","):
                children.append(self.parse_type())
        children.extend(self.parse_class_body("class"))
        return _N("ClassDeclaration", start, children, name=name)

    def parse_interface_declaration(self, mods: list[_N], start: int) -> _N:
        self.expect("interface")
        name = self.expect_ident().text
        children = list(mods)
        children.extend(self.parse_type_parameters())
        if self.accept("extends"):
            children.append(self.parse_type())
            while self.accept(","):
                children.append(self.parse_type())
        children.extend(self.parse_class_body("interface"))
        return _N("InterfaceDeclaration", start, children, name=name)

    def parse_enum_declaration(self, mods: list[_N], start: int) -> _N:
        self.expect("enum")
        name = self.expect_ident().text
        children = list(mods)
        if self.accept("implements"):
            children.append(self.parse_type())
            while self.accept(","):
                children.append(self.parse_type())
        body_start = self.expect("{").index
        constants: list[_N] = []
        while not self.at("}") and not self.at(";"):
            constants.append(self.parse_enum_constant())
            if not self.accept(","):
                break
        if self.accept(";"):
            while not self.at("}"):
                if self.accept(";"):
                    continue
                constants.append(self.parse_class_member("class"))
        self.expect("}")
        children.append(_N("EnumBody", body_start, constants))
        return _N("EnumDeclaration", start, children, name=name)

    def parse_enum_constant(self) -> _N:
        annotations = self.parse_annotations()
        name_tok = self.expect_ident()
        start = annotations[0].start if annotations else name_tok.index
        children = list(annotations)
        if self.at("("):
            children.extend(self.parse_arguments())
        if self.at("{"):
            children.extend(self.parse_class_body("class"))
        return _N("EnumConstantDeclaration", start, children, name=name_tok.text)

    def parse_annotation_declaration(self, mods: list[_N], start: int) -> _N:
        self.expect("@")
        self.expect("interface")
        name = self.expect_ident().text
        children = list(mods)
        children.extend(self.parse_class_body("annotation"))
        return _N("AnnotationDeclaration", start, children, name=name)

    def parse_class_body(self, kind: str) -> list[_N]:
        self.expect("{")
        members: list[_N] = []
        while not self.at("}"):
            if self.accept(";"):
                continue
            members.extend(self.parse_class_member_group(kind))
        self.expect("}")
        return members

    def parse_class_member_group(self, kind: str) -> list[_N]:
        # Initializer blocks: `static { ... }` yields a Modifier plus the block.
        if self.at("static") and self.peek().text == "{":
            tok = self.cur()
            self.pos += 1
            return [_N("Modifier", tok.index, value="static"), self.parse_block()]
        if self.at("{"):
            return [self.parse_block()]
        return [self.parse_class_member(kind)]

    def parse_class_member(self, kind: str) -> _N:
        start = self.cur().index
        mods = self.parse_modifier_nodes()
        if mods:
            start = mods[0].start
        if self.at("class"):
            return self.parse_class_declaration(mods, start)
        if self.at("interface"):
            return self.parse_interface_declaration(mods, start)
        if self.at("enum"):
            return self.parse_enum_declaration(mods, start)
        if self.at("@") and self.peek().text == "interface":
            return self.parse_annotation_declaration(mods, start)

        type_params = self.parse_type_parameters()
        if self.at_ident() and self.peek().text == "(":
            return self.parse_constructor(mods, type_params, start)
        if self.accept("void"):
            name = self.expect_ident().text
            return self.parse_method_rest(mods, type_params, None, name, start, kind)
        rtype = self.parse_type()
        if kind == "annotation" and self.at_ident() and self.peek().text == "(":
            return self.parse_annotation_method(mods, rtype, start)
        name_tok = self.expect_ident()
        if self.at("("):
            return self.parse_method_rest(mods, type_params, rtype, name_tok.text, start, kind)
        declarators = [self.parse_variable_declarator(name_tok)]
        while self.accept(","):
            declarators.append(self.parse_variable_declarator(self.expect_ident()))
        self.expect(";")
        decl_type = "ConstantDeclaration" if kind in ("interface", "annotation") else "FieldDeclaration"
        return _N(decl_type, start, mods + [rtype] + declarators)

    def parse_annotation_method(self, mods: list[_N], rtype: _N, start: int) -> _N:
        name = self.expect_ident().text
        self.expect("(")
        self.expect(")")
        children = mods + [rtype]
        if self.accept("default"):
            children.append(self.parse_element_value())
        self.expect(";")
        return _N("AnnotationMethod", start, children, name=name)

    def parse_constructor(self, mods: list[_N], type_params: list[_N], start: int) -> _N:
        name = self.expect_ident().text
        params = self.parse_formal_parameters()
        throws = self.parse_throws()
        body = self.parse_block()
        return _N(
            "ConstructorDeclaration", start,
            mods + type_params + params + throws + [body], name=name,
        )

    def parse_method_rest(self, mods, type_params, rtype, name, start, kind) -> _N:
        params = self.parse_formal_parameters()
        while self.at("["):  # archaic trailing dims on the method
            self.expect("[")
            self.expect("]")
        throws = self.parse_throws()
        children = list(mods) + type_params + ([rtype] if rtype else []) + params + throws
        if self.at("{"):
            children.append(self.parse_block())
        else:
            self.expect(";")
        return _N("MethodDeclaration", start, children, name=name)

    def parse_throws(self) -> list[_N]:
        if not self.accept("throws"):
            return []
        types = [self.parse_type()]
        while self.accept(","):
            types.append(self.parse_type())
        return types

    def parse_formal_parameters(self) -> list[_N]:
        self.expect("(")
        params: list[_N] = []
        while not self.at(")"):
            params.append(self.parse_formal_parameter())
            if not self.accept(","):
                break
        self.expect(")")
        return params

    def parse_formal_parameter(self) -> _N:
        start = self.cur().index
        mods = self.parse_modifier_nodes()
        ptype = self.parse_type()
        varargs = bool(self.accept("..."))
        name_tok = self.expect_ident()
        self.skip_dims()
        return _N(
            "FormalParameter", start, mods + [ptype],
            name=name_tok.text, varargs="true" if varargs else "",
        )

    def skip_dims(self) -> int:
        count = 0
        while self.at("[") and self.peek().text == "]":
            self.pos += 2
            count += 1
        return count

    def parse_variable_declarator(self, name_tok: Token) -> _N:
        dims = self.skip_dims()
        children = []
        if self.accept("="):
            children.append(self.parse_variable_initializer())
        return _N(
            "VariableDeclarator", name_tok.index, children,
            name=name_tok.text, dims=str(dims) if dims else "",
        )

    def parse_variable_initializer(self) -> _N:
        if self.at("{"):
            return self.parse_array_initializer()
        return self.parse_expression()

    def parse_array_initializer(self) -> _N:
        start = self.expect("{").index
        values = []
        while not self.at("}"):
            values.append(self.parse_variable_initializer())
            if not self.accept(","):
                break
        self.expect("}")
        return _N("ArrayInitializer", start, values)

    # -- types -----------------------------------------------------------

    def parse_type_parameters(self) -> list[_N]:
        if not self.at("<"):
            return []
        self.expect("<")
        params = [self.parse_type_parameter()]
        while self.accept(","):
            params.append(self.parse_type_parameter())
        self.expect(">")
        return params

    def parse_type_parameter(self) -> _N:
        name_tok = self.expect_ident()
        bounds = []
        if self.accept("extends"):
            bounds.append(self.parse_type())
            while self.accept("&"):
                bounds.append(self.parse_type())
        return _N("TypeParameter", name_tok.index, bounds, name=name_tok.text)

    def parse_type(self) -> _N:
        t = self.cur()
        if t.kind == "keyword" and t.text in PRIMITIVE_TYPES:
            self.pos += 1
            dims = self.skip_dims()
            return _N("BasicType", t.index, name=t.text, dims=str(dims) if dims else "")
        if t.kind != "ident":
            self.fail(f"expected a type, found {t.text!r}")
        start = t.index
        parts = [self.expect_ident().text]
        children: list[_N] = []
        children.extend(self.parse_type_arguments_opt())
        while self.at(".") and self.peek().kind == "ident":
            self.pos += 1
            parts.append(self.expect_ident().text)
            children.extend(self.parse_type_arguments_opt())
        dims = self.skip_dims()
        return _N(
            "ReferenceType", start, children,
            name=".".join(parts), dims=str(dims) if dims else "",
        )

    def parse_type_arguments_opt(self) -> list[_N]:
        if not self.at("<"):
            return []
        self.expect("<")
        if self.accept(">"):  # diamond
            return []
        args = [self.parse_type_argument()]
        while self.accept(","):
            args.append(self.parse_type_argument())
        self.expect(">")
        return args

    def parse_type_argument(self) -> _N:
        if self.at("?"):
            start = self.expect("?").index
            pattern = ""
            children = []
            if self.accept("extends"):
                pattern = "extends"
                children.append(self.parse_type())
            elif self.accept("super"):
                pattern = "super"
                children.append(self.parse_type())
            return _N("TypeArgument", start, children, pattern=pattern)
        inner = self.parse_type()
        return _N("TypeArgument", inner.start, [inner])

    # -- statements --------------------------------------------------------

    def parse_block(self) -> _N:
        start = self.expect("{").index
        stmts = []
        while not self.at("}"):
            stmts.append(self.parse_statement())
        self.expect("}")
        return _N("BlockStatement", start, stmts)

    def parse_statement(self) -> _N:
        t = self.cur()
        if self.at("{"):
            return self.parse_block()
        if self.at(";"):
            self.pos += 1
            return _N("Statement", t.index)
        if t.kind == "keyword" and t.text in _STATEMENT_KEYWORDS:
            return getattr(self, f"_stmt_{t.text}")()
        if t.kind == "ident" and self.peek().text == ":" and self.peek().kind == "op":
            label = self.expect_ident().text
            self.expect(":")
            inner = self.parse_statement()
            inner.attrs["label"] = label
            return inner
        decl = self.try_parse_local_variable_declaration()
        if decl is not None:
            return decl
        start = self.cur().index
        expr = self.parse_expression()
        self.expect(";")
        return _N("StatementExpression", start, [expr])

    def try_parse_local_variable_declaration(self) -> _N | None:
        t = self.cur()
        if t.kind == "keyword" and t.text in ("new", "this", "super"):
            return None
        if t.kind == "keyword" and t.text in PRIMITIVE_TYPES and self.peek().text == ".":
            return None  # e.g. int.class used in an expression
        mark = self.pos
        try:
            start = t.index
            mods = self.parse_modifier_nodes()
            vtype = self.parse_type()
            declarators = [self.parse_variable_declarator(self.expect_ident())]
            while self.accept(","):
                declarators.append(self.parse_variable_declarator(self.expect_ident()))
            self.expect(";")
            return _N("LocalVariableDeclaration", start, mods + [vtype] + declarators)
        except JavaSyntaxError:
            self.pos = mark
            return None

    def _stmt_if(self) -> _N:
        start = self.expect("if").index
        self.expect("(")
        cond = self.parse_expression()
        self.expect(")")
        then = self.parse_statement()
        children = [cond, then]
        if self.accept("else"):
            children.append(self.parse_statement())
        return _N("IfStatement", start, children)

    def _stmt_while(self) -> _N:
        start = self.expect("while").index
        self.expect("(")
        cond = self.parse_expression()
        self.expect(")")
        body = self.parse_statement()
        return _N("WhileStatement", start, [cond, body])

    def _stmt_do(self) -> _N:
        start = self.expect("do").index
        body = self.parse_statement()
        self.expect("while")
        self.expect("(")
        cond = self.parse_expression()
        self.expect(")")
        self.expect(";")
        return _N("DoStatement", start, [body, cond])

    def _stmt_for(self) -> _N:
        start = self.expect("for").index
        self.expect("(")
        control = self.parse_for_control()
        self.expect(")")
        body = self.parse_statement()
        return _N("ForStatement", start, [control, body])

    def parse_for_control(self) -> _N:
        start = self.cur().index
        enhanced = self.try_parse_enhanced_for_control(start)
        if enhanced is not None:
            return enhanced
        children: list[_N] = []
        cond_index = -1
        if not self.at(";"):
            children.extend(self.parse_for_init())
        self.expect(";")
        if not self.at(";"):
            cond_index = len(children)
            children.append(self.parse_expression())
        self.expect(";")
        while not self.at(")"):
            stmt_start = self.cur().index
            children.append(_N("StatementExpression", stmt_start, [self.parse_expression()]))
            if not self.accept(","):
                break
        return _N(
            "ForControl", start, children,
            cond_index=str(cond_index) if cond_index >= 0 else "",
        )

    def try_parse_enhanced_for_control(self, start: int) -> _N | None:
        mark = self.pos
        try:
            mods = self.parse_modifier_nodes()
            vtype = self.parse_type()
            name_tok = self.expect_ident()
            self.skip_dims()
            self.expect(":")
        except JavaSyntaxError:
            self.pos = mark
            return None
        iterable = self.parse_expression()
        declarator = _N("VariableDeclarator", name_tok.index, name=name_tok.text)
        var = _N("VariableDeclaration", start, mods + [vtype, declarator])
        return _N("EnhancedForControl", start, [var, iterable])

    def parse_for_init(self) -> list[_N]:
        mark = self.pos
        start = self.cur().index
        try:
            mods = self.parse_modifier_nodes()
            vtype = self.parse_type()
            declarators = [self.parse_variable_declarator(self.expect_ident())]
            while self.accept(","):
                declarators.append(self.parse_variable_declarator(self.expect_ident()))
            return [_N("VariableDeclaration", start, mods + [vtype] + declarators)]
        except JavaSyntaxError:
            self.pos = mark
        exprs = []
        while True:
            stmt_start = self.cur().index
            exprs.append(_N("StatementExpression", stmt_start, [self.parse_expression()]))
            if not self.accept(","):
                return exprs

    def _stmt_switch(self) -> _N:
        start = self.expect("switch").index
        self.expect("(")
        selector = self.parse_expression()
        self.expect(")")
        self.expect("{")
        cases = []
        while not self.at("}"):
            cases.append(self.parse_switch_case())
        self.expect("}")
        return _N("SwitchStatement", start, [selector] + cases)

    def parse_switch_case(self) -> _N:
        start = self.cur().index
        labels: list[_N] = []
        is_default = False
        saw_label = False
        while self.at("case") or self.at("default"):
            if self.accept("case"):
                labels.append(self.parse_expression())
            else:
                self.accept("default")
                is_default = True
            self.expect(":")
            saw_label = True
        if not saw_label:
            self.fail("expected 'case' or 'default'")
        stmts = []
        while not (self.at("case") or self.at("default") or self.at("}")):
            stmts.append(self.parse_statement())
        return _N(
            "SwitchStatementCase", start, labels + stmts,
            default="true" if is_default else "",
        )

    def _stmt_try(self) -> _N:
        start = self.expect("try").index
        children: list[_N] = []
        if self.accept("("):
            while not self.at(")"):
                children.append(self.parse_try_resource())
                if not self.accept(";"):
                    break
            self.expect(")")
        children.append(self.parse_block())
        while self.at("catch"):
            children.append(self.parse_catch_clause())
        if self.accept("finally"):
            children.append(self.parse_block())
        return _N("TryStatement", start, children)

    def parse_try_resource(self) -> _N:
        start = self.cur().index
        mods = self.parse_modifier_nodes()
        rtype = self.parse_type()
        name_tok = self.expect_ident()
        self.expect("=")
        value = self.parse_expression()
        return _N("TryResource", start, mods + [rtype, value], name=name_tok.text)

    def parse_catch_clause(self) -> _N:
        start = self.expect("catch").index
        self.expect("(")
        param_start = self.cur().index
        mods = self.parse_modifier_nodes()
        types = [self.parse_type()]
        while self.accept("|"):
            types.append(self.parse_type())
        name_tok = self.expect_ident()
        self.expect(")")
        param = _N("CatchClauseParameter", param_start, mods + types, name=name_tok.text)
        body = self.parse_block()
        return _N("CatchClause", start, [param, body])

    def _stmt_return(self) -> _N:
        start = self.expect("return").index
        children = []
        if not self.at(";"):
            children.append(self.parse_expression())
        self.expect(";")
        return _N("ReturnStatement", start, children)

    def _stmt_throw(self) -> _N:
        start = self.expect("throw").index
        expr = self.parse_expression()
        self.expect(";")
        return _N("ThrowStatement", start, [expr])

    def _stmt_break(self) -> _N:
        start = self.expect("break").index
        label = self.expect_ident().text if self.at_ident() else ""
        self.expect(";")
        return _N("BreakStatement", start, goto=label)

    def _stmt_continue(self) -> _N:
        start = self.expect("continue").index
        label = self.expect_ident().text if self.at_ident() else ""
        self.expect(";")
        return _N("ContinueStatement", start, goto=label)

    def _stmt_assert(self) -> _N:
        start = self.expect("assert").index
        children = [self.parse_expression()]
        if self.accept(":"):
            children.append(self.parse_expression())
        self.expect(";")
        return _N("AssertStatement", start, children)

    def _stmt_synchronized(self) -> _N:
        start = self.expect("synchronized").index
        self.expect("(")
        lock = self.parse_expression()
        self.expect(")")
        body = self.parse_block()
        return _N("SynchronizedStatement", start, [lock, body])

    # -- expressions -------------------------------------------------------

    def parse_expression(self) -> _N:
        lhs = self.parse_ternary()
        op = self.peek_assignment_op()
        if op is None:
            return lhs
        ntokens = {"=": 1, ">>=": 3, ">>>=": 4}.get(op, 1)
        self.pos += ntokens
        rhs = self.parse_expression()
        return _N("Assignment", lhs.start, [lhs, rhs], operator=op)

    def peek_assignment_op(self) -> str | None:
        t = self.cur()
        if t.kind != "op":
            return None
        if t.text in _ASSIGN_OPS:
            return t.text
        if t.text == ">":
            run, has_eq = self.gt_run()
            if has_eq and run >= 2:
                return ">" * run + "="
        return None

    def parse_ternary(self) -> _N:
        cond = self.parse_binary(0)
        if not self.at("?"):
            return cond
        self.expect("?")
        if_true = self.parse_expression()
        self.expect(":")
        if_false = self.parse_ternary()
        return _N("TernaryExpression", cond.start, [cond, if_true, if_false])

    _BINARY_LEVELS: tuple[tuple[str, ...], ...] = (
        ("||",), ("&&",), ("|",), ("^",), ("&",), ("==", "!="),
        ("<", ">", "<=", ">=", "instanceof"), ("<<", ">>", ">>>"),
        ("+", "-"), ("*", "/", "%"),
    )

    def parse_binary(self, level: int) -> _N:
        if level >= len(self._BINARY_LEVELS):
            return self.parse_unary()
        left = self.parse_binary(level + 1)
        ops = self._BINARY_LEVELS[level]
        while True:
            op = self.peek_binary_op(ops)
            if op is None:
                return left
            if op == "instanceof":
                self.pos += 1
                rtype = self.parse_type()
                left = _N("BinaryOperation", left.start, [left, rtype], operator=op)
                continue
            self.pos += len(op) if op in (">", ">>", ">>>", ">=") else 1
            right = self.parse_binary(level + 1)
            left = _N("BinaryOperation", left.start, [left, right], operator=op)

    def peek_binary_op(self, ops: tuple[str, ...]) -> str | None:
        t = self.cur()
        if t.text == "instanceof" and t.kind == "keyword":
            return "instanceof" if "instanceof" in ops else None
        if t.kind != "op":
            return None
        if t.text == ">":
            run, has_eq = self.gt_run()
            if has_eq:
                if run == 1 and ">=" in ops:
                    return ">="
                return None  # >>= / >>>= belong to assignment
            if run == 1:
                return ">" if ">" in ops else None
            return ">" * run if ">" * run in ops else None
        if t.text in ops and t.text != ">":
            return t.text
        return None

    def parse_unary(self) -> _N:
        t = self.cur()
        if t.kind == "op" and t.text in ("+", "-", "!", "~", "++", "--"):
            self.pos += 1
            operand = self.parse_unary()
            prev = operand.attrs.get("prefix", "")
            operand.attrs["prefix"] = (t.text + " " + prev).strip()
            return operand
        if self.at("("):
            lam = self.try_parse_lambda()
            if lam is not None:
                return lam
            cast = self.try_parse_cast()
            if cast is not None:
                return cast
        return self.parse_postfix()

    def try_parse_lambda(self) -> _N | None:
        # Look ahead to the matching ')' and require '->' right after.
        depth = 0
        k = 0
        while True:
            tok = self.peek(k)
            if tok.kind == "eof":
                return None
            if tok.text == "(" and tok.kind == "op":
                depth += 1
            elif tok.text == ")" and tok.kind == "op":
                depth -= 1
                if depth == 0:
                    break
            k += 1
        after = self.peek(k + 1)
        if not (after.kind == "op" and after.text == "->"):
            return None
        return self.parse_lambda_parenthesized()

    def parse_lambda_parenthesized(self) -> _N:
        start = self.expect("(").index
        params: list[_N] = []
        if not self.at(")"):
            bare = self.at_ident() and self.peek().text in (",", ")")
            if bare:
                tok = self.expect_ident()
                params.append(_N("InferredFormalParameter", tok.index, name=tok.text))
                while self.accept(","):
                    tok = self.expect_ident()
                    params.append(_N("InferredFormalParameter", tok.index, name=tok.text))
            else:
                params.append(self.parse_formal_parameter())
                while self.accept(","):
                    params.append(self.parse_formal_parameter())
        self.expect(")")
        self.expect("->")
        body = self.parse_lambda_body()
        return _N("LambdaExpression", start, params + [body])

    def parse_lambda_body(self) -> _N:
        if self.at("{"):
            return self.parse_block()
        return self.parse_expression()

    def try_parse_cast(self) -> _N | None:
        mark = self.pos
        start = self.cur().index
        self.expect("(")
        try:
            ctype = self.parse_type()
            while self.accept("&"):  # intersection cast
                self.parse_type()
            if not self.at(")"):
                raise JavaSyntaxError("not a cast", self.cur().line, self.cur().col, self.path)
        except JavaSyntaxError:
            self.pos = mark
            return None
        self.pos += 1  # the ')'
        nxt = self.cur()
        primitive = ctype.type_name == "BasicType" and not ctype.attrs.get("dims")
        ok = (
            nxt.kind in ("ident", "int", "float", "char", "string")
            or (nxt.kind == "keyword" and nxt.text in ("true", "false", "null"))
            or (nxt.kind == "keyword" and nxt.text in _REF_CAST_FOLLOW)
            or (nxt.kind == "op" and nxt.text in ("(", "!", "~"))
            or (nxt.kind == "keyword" and nxt.text in PRIMITIVE_TYPES)
            or (primitive and nxt.kind == "op" and nxt.text in ("+", "-", "++", "--"))
        )
        if not ok:
            self.pos = mark
            return None
        operand = self.parse_unary()
        return _N("Cast", start, [ctype, operand])

    def parse_postfix(self) -> _N:
        node = self.parse_primary()
        while True:
            t = self.cur()
            if t.kind == "op" and t.text == ".":
                nxt = self.peek()
                if nxt.kind == "ident" or nxt.text in ("new", "this", "<"):
                    self.pos += 1
                    node.children.append(self.parse_selector())
                    continue
                break
            if t.kind == "op" and t.text == "[" and self.peek().text != "]":
                start = t.index
                self.pos += 1
                index = self.parse_expression()
                self.expect("]")
                node.children.append(_N("ArraySelector", start, [index]))
                continue
            if t.kind == "op" and t.text == "::":
                node = self.parse_method_reference(node)
                continue
            if t.kind == "op" and t.text in ("++", "--"):
                self.pos += 1
                node.attrs["postfix"] = (node.attrs.get("postfix", "") + " " + t.text).strip()
                continue
            return node

    def parse_selector(self) -> _N:
        t = self.cur()
        if self.accept("new"):
            ctype = self.parse_type()
            args = self.parse_arguments() if self.at("(") else []
            return _N("InnerClassCreator", t.index, [ctype] + args)
        if self.accept("this"):
            return _N("This", t.index, selector="true")
        if self.at("<"):
            targs = self.parse_type_arguments_opt()
            name_tok = self.expect_ident()
            args = self.parse_arguments()
            return _N("MethodInvocation", t.index, targs + args, member=name_tok.text)
        name_tok = self.expect_ident()
        if self.at("("):
            args = self.parse_arguments()
            return _N("MethodInvocation", name_tok.index, args, member=name_tok.text)
        return _N("MemberReference", name_tok.index, member=name_tok.text, selector="true")

    def parse_method_reference(self, target: _N) -> _N:
        self.expect("::")
        self.parse_type_arguments_opt()
        if self.accept("new"):
            name = "new"
        else:
            name = self.expect_ident().text
        return _N("MethodReference", target.start, [target], method=name)

    def parse_arguments(self) -> list[_N]:
        self.expect("(")
        args = []
        while not self.at(")"):
            args.append(self.parse_expression())
            if not self.accept(","):
                break
        self.expect(")")
        return args

    def parse_primary(self) -> _N:
        t = self.cur()
        if t.kind in _LITERAL_KINDS:
            self.pos += 1
            return _N("Literal", t.index, value=t.text)
        if t.kind == "keyword" and t.text in ("true", "false", "null"):
            self.pos += 1
            return _N("Literal", t.index, value=t.text)
        if self.at("("):
            self.expect("(")
            inner = self.parse_expression()
            self.expect(")")
            return inner
        if self.at("this"):
            self.pos += 1
            if self.at("("):
                return _N("ExplicitConstructorInvocation", t.index, self.parse_arguments())
            return _N("This", t.index)
        if self.at("super"):
            self.pos += 1
            if self.at("("):
                return _N("SuperConstructorInvocation", t.index, self.parse_arguments())
            self.expect(".")
            name_tok = self.expect_ident()
            if self.at("("):
                return _N(
                    "SuperMethodInvocation", t.index, self.parse_arguments(),
                    member=name_tok.text,
                )
            return _N("SuperMemberReference", t.index, member=name_tok.text)
        if self.at("new"):
            return self.parse_creator()
        if t.kind == "keyword" and t.text in PRIMITIVE_TYPES:
            ctype = self.parse_type()
            self.expect(".")
            self.expect("class")
            return _N("ClassReference", t.index, [ctype])
        if self.at("void"):
            self.pos += 1
            self.expect(".")
            self.expect("class")
            return _N("VoidClassReference", t.index)
        if t.kind == "ident":
            if self.peek().kind == "op" and self.peek().text == "->":
                tok = self.expect_ident()
                self.expect("->")
                param = _N("InferredFormalParameter", tok.index, name=tok.text)
                body = self.parse_lambda_body()
                return _N("LambdaExpression", tok.index, [param, body])
            return self.parse_name_expression()
        self.fail(f"unexpected token {t.text!r} in expression")

    def parse_name_expression(self) -> _N:
        """Dotted-name primaries: calls, references, class literals."""
        start_tok = self.expect_ident()
        parts = [start_tok.text]
        while self.at(".") and self.peek().kind == "ident":
            # Stop the dotted run before a segment that is itself a call or
            # a generic-method invocation so it becomes the member.
            self.pos += 1
            parts.append(self.expect_ident().text)
        qualifier = ".".join(parts[:-1])
        member = parts[-1]
        if self.at("("):
            args = self.parse_arguments()
            return _N("MethodInvocation", start_tok.index, args, member=member, qualifier=qualifier)
        if self.at(".") and self.peek().text == "class":
            self.pos += 2
            rtype = _N("ReferenceType", start_tok.index, name=".".join(parts))
            return _N("ClassReference", start_tok.index, [rtype])
        if self.at(".") and self.peek().text == "this":
            self.pos += 2
            return _N("This", start_tok.index, qualifier=".".join(parts))
        if self.at(".") and self.peek().text == "<":
            self.pos += 1
            targs = self.parse_type_arguments_opt()
            name_tok = self.expect_ident()
            args = self.parse_arguments()
            return _N(
                "MethodInvocation", start_tok.index, targs + args,
                member=name_tok.text, qualifier=".".join(parts),
            )
        if self.at("[") and self.peek().text == "]":
            # Array class literal or array method reference: String[]::new
            mark = self.pos
            dims = self.skip_dims()
            if self.at(".") and self.peek().text == "class":
                self.pos += 2
                rtype = _N("ReferenceType", start_tok.index, name=".".join(parts), dims=str(dims))
                return _N("ClassReference", start_tok.index, [rtype])
            if self.at("::"):
                rtype = _N("ReferenceType", start_tok.index, name=".".join(parts), dims=str(dims))
                return self.parse_method_reference(rtype)
            self.pos = mark
        return _N("MemberReference", start_tok.index, member=member, qualifier=qualifier)

    def parse_creator(self) -> _N:
        start = self.expect("new").index
        self.parse_type_arguments_opt()
        ctype = self.parse_creator_type()
        if self.at("["):
            dims: list[_N] = []
            empty_dims = 0
            while self.at("["):
                self.expect("[")
                if self.at("]"):
                    self.expect("]")
                    empty_dims += 1
                else:
                    dims.append(self.parse_expression())
                    self.expect("]")
            children = [ctype] + dims
            if self.at("{"):
                children.append(self.parse_array_initializer())
            return _N("ArrayCreator", start, children, empty_dims=str(empty_dims) if empty_dims else "")
        args = self.parse_arguments() if self.at("(") else []
        children = [ctype] + args
        if self.at("{"):
            children.extend(self.parse_class_body("class"))
        return _N("ClassCreator", start, children)

    def parse_creator_type(self) -> _N:
        t = self.cur()
        if t.kind == "keyword" and t.text in PRIMITIVE_TYPES:
            self.pos += 1
            return _N("BasicType", t.index, name=t.text)
        start = t.index
        parts = [self.expect_ident().text]
        children = list(self.parse_type_arguments_opt())
        while self.at(".") and self.peek().kind == "ident":
            self.pos += 1
            parts.append(self.expect_ident().text)
            children.extend(self.parse_type_arguments_opt())
        return _N("ReferenceType", start, children, name=".".join(parts))


def _flatten(root: _N, path: str, warnings: list[str]) -> SourceUnit:
    nodes: list[AstNode] = []
    parents: list[int] = []

    def walk(n: _N, parent: int) -> int:
        nid = len(nodes)
        nodes.append(None)  # type: ignore[arg-type]  # placeholder, filled below
        parents.append(parent)
        child_ids = tuple(walk(c, nid) for c in n.children)
        nodes[nid] = AstNode(nid, node_type(n.type_name), child_ids, n.start, dict(n.attrs))
        return nid

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 20000))
    try:
        walk(root, -1)
    finally:
        sys.setrecursionlimit(old_limit)
    return SourceUnit(path, 0, tuple(nodes), tuple(parents), tuple(warnings))


def parse_java(source_text: str, path: str = "<source>") -> SourceUnit:
    """Parse one compilation unit (comments should already be stripped).

    Files that are not valid compilation units but are valid member
    sequences (bare methods or fields, as snippet corpora often contain)
    are parsed under a synthetic CompilationUnit root.
    """
    tokens = tokenize(source_text, path)
    parser = _Parser(tokens, path)
    try:
        root = parser.parse_compilation_unit()
        return _flatten(root, path, parser.warnings)
    except JavaSyntaxError as cu_error:
        fallback = _Parser(tokens, path)
        try:
            root = fallback.parse_member_sequence()
        except JavaSyntaxError:
            raise cu_error from None
        warnings = fallback.warnings + ["parsed as a bare member sequence"]
        return _flatten(root, path, warnings)


def parse_source(source_text: str, path: str = "<source>") -> SourceUnit:
    """strip_comments + parse_java in one step."""
    return parse_java(strip_comments(source_text, path), path)
