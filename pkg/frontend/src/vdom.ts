// Minimal virtual nodes: views stay pure functions over API payloads, so
// tests can assert on rendered trees without a browser. mount() realizes
// a tree into real DOM in the app shell.

export type Child = VNode | string;

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  events: Record<string, (event?: unknown) => void>;
  children: Child[];
}

export function h(
  tag: string,
  attrs: Record<string, string> = {},
  children: Child[] | Child = [],
  events: Record<string, (event?: unknown) => void> = {},
): VNode {
  return {
    tag,
    attrs,
    events,
    children: Array.isArray(children) ? children : [children],
  };
}

/** All text content below a node, concatenated in document order. */
export function textOf(node: Child): string {
  if (typeof node === 'string') return node;
  return node.children.map(textOf).join('');
}

export function findAll(node: VNode, predicate: (n: VNode) => boolean): VNode[] {
  const hits: VNode[] = [];
  const walk = (current: VNode) => {
    if (predicate(current)) hits.push(current);
    for (const child of current.children) {
      if (typeof child !== 'string') walk(child);
    }
  };
  walk(node);
  return hits;
}

export function byClass(node: VNode, className: string): VNode[] {
  return findAll(node, (n) => (n.attrs['class'] ?? '').split(' ').includes(className));
}

export function byAttr(node: VNode, name: string, value: string): VNode[] {
  return findAll(node, (n) => n.attrs[name] === value);
}

export function firstByClass(node: VNode, className: string): VNode {
  const hits = byClass(node, className);
  if (!hits.length) throw new Error(`no node with class ${className}`);
  return hits[0];
}

/** Realize a virtual tree into the live document. */
export function mount(root: Element, node: VNode): void {
  root.replaceChildren(toDom(root.ownerDocument, node));
}

function toDom(doc: Document, node: Child): Node {
  if (typeof node === 'string') return doc.createTextNode(node);
  const el = doc.createElement(node.tag);
  for (const [name, value] of Object.entries(node.attrs)) {
    el.setAttribute(name, value);
    if (name === 'value' && 'value' in el) (el as HTMLInputElement).value = value;
  }
  for (const [name, handler] of Object.entries(node.events)) {
    el.addEventListener(name, handler);
  }
  for (const child of node.children) {
    el.appendChild(toDom(doc, child));
  }
  return el;
}
