// Template designer: element palette (left) and canvas (right), config
// forms per kind, lifecycle buttons, analytics and feedback tabs. The
// structural controls mirror the server's lifecycle rules so illegal
// operations are unreachable rather than merely rejected.

import { h, VNode } from '../vdom.js';
import type {
  AnalyticsPayload,
  ElementKindName,
  FeedbackPayload,
  TemplateDoc,
  TemplateElementDoc,
  TemplateStateName,
} from '../types.js';

export const ELEMENT_KINDS: ElementKindName[] = [
  'narrative',
  'indicator_panel',
  'contribution_list',
  'dropdown',
  'text_field',
];

const DEFAULT_CONFIGS: Record<ElementKindName, () => Record<string, unknown>> = {
  narrative: () => ({ max_length: 2000, ai_assist_enabled: false }),
  indicator_panel: () => ({ indicator_keys: ['total_outputs', 'h_index'] }),
  contribution_list: () => ({
    allowed_work_types: ['publication', 'dataset', 'software', 'other'],
    facets_enabled: ['topics', 'license', 'access', 'work_type', 'year'],
  }),
  dropdown: () => ({ options: ['Option 1'] }),
  text_field: () => ({ max_length: 200 }),
};

let elementCounter = 0;

export function newDraft(templateId: string, name: string): TemplateDoc {
  return { template_id: templateId, name, description: '', state: 'draft', version: 1, elements: [] };
}

export function addElement(doc: TemplateDoc, kind: ElementKindName): TemplateDoc {
  elementCounter += 1;
  const element: TemplateElementDoc = {
    element_id: `${kind}-${elementCounter}`,
    kind,
    label: kind.replace('_', ' '),
    required: false,
    config: DEFAULT_CONFIGS[kind](),
  };
  return { ...doc, elements: [...doc.elements, element] };
}

export function removeElement(doc: TemplateDoc, elementId: string): TemplateDoc {
  return { ...doc, elements: doc.elements.filter((e) => e.element_id !== elementId) };
}

export function moveElement(doc: TemplateDoc, elementId: string, delta: -1 | 1): TemplateDoc {
  const elements = [...doc.elements];
  const from = elements.findIndex((e) => e.element_id === elementId);
  const to = from + delta;
  if (from < 0 || to < 0 || to >= elements.length) return doc;
  const [moved] = elements.splice(from, 1);
  elements.splice(to, 0, moved);
  return { ...doc, elements };
}

export function updateElement(
  doc: TemplateDoc,
  elementId: string,
  patch: Partial<TemplateElementDoc>,
): TemplateDoc {
  return {
    ...doc,
    elements: doc.elements.map((e) =>
      e.element_id === elementId ? { ...e, ...patch, config: { ...e.config, ...(patch.config ?? {}) } } : e,
    ),
  };
}

/** Which controls the current lifecycle state leaves enabled. */
export function allowedOperations(state: TemplateStateName): {
  structural: boolean;
  textual: boolean;
  transitions: TemplateStateName[];
} {
  switch (state) {
    case 'draft':
      return { structural: true, textual: true, transitions: ['piloting'] };
    case 'piloting':
      return { structural: false, textual: true, transitions: ['published', 'draft'] };
    case 'published':
      return { structural: false, textual: false, transitions: [] };
  }
}

export type EditorTab = 'design' | 'analytics' | 'feedback';

export interface TemplateEditorState {
  doc: TemplateDoc;
  tab: EditorTab;
  analytics: AnalyticsPayload | null;
  feedback: FeedbackPayload[];
  notice: string | null;
}

export interface TemplateEditorHandlers {
  onAddElement(kind: ElementKindName): void;
  onRemoveElement(elementId: string): void;
  onMoveElement(elementId: string, delta: -1 | 1): void;
  onLabelChange(elementId: string, label: string): void;
  onNameChange(name: string): void;
  onSave(): void;
  onTransition(target: TemplateStateName): void;
  onSelectTab(tab: EditorTab): void;
}

function configSummary(element: TemplateElementDoc): string {
  switch (element.kind) {
    case 'narrative':
      return `max ${element.config['max_length'] ?? '∞'} chars${
        element.config['ai_assist_enabled'] ? ', AI assist' : ''
      }`;
    case 'indicator_panel':
      return (element.config['indicator_keys'] as string[]).join(', ');
    case 'contribution_list':
      return `types: ${(element.config['allowed_work_types'] as string[]).join('/')}`;
    case 'dropdown':
      return (element.config['options'] as string[]).join(' | ');
    case 'text_field':
      return `max ${element.config['max_length'] ?? '∞'} chars`;
  }
}

function designTab(state: TemplateEditorState, handlers: TemplateEditorHandlers): VNode {
  const ops = allowedOperations(state.doc.state);
  return h('div', { class: 'design two-pane' }, [
    h('aside', { class: 'palette' }, [
      h('h4', {}, 'Element palette'),
      h(
        'ul',
        {},
        ELEMENT_KINDS.map((kind) =>
          h(
            'li',
            {
              class: 'palette-item',
              'data-kind': kind,
              ...(ops.structural ? {} : { disabled: 'disabled', title: 'structure is frozen while piloting/published' }),
            },
            kind.replace('_', ' '),
            ops.structural ? { click: () => handlers.onAddElement(kind) } : {},
          ),
        ),
      ),
    ]),
    h('div', { class: 'canvas' }, [
      h('input', {
        class: 'template-name',
        value: state.doc.name,
        ...(ops.textual ? {} : { disabled: 'disabled' }),
      }, [], ops.textual
        ? { input: (ev) => handlers.onNameChange((ev as { target: { value: string } }).target.value) }
        : {}),
      h(
        'ol',
        { class: 'canvas-elements' },
        state.doc.elements.map((element) =>
          h('li', { class: 'canvas-element', 'data-element': element.element_id }, [
            h('span', { class: 'kind-tag' }, element.kind),
            h('input', {
              class: 'element-label',
              value: element.label,
              ...(ops.textual ? {} : { disabled: 'disabled' }),
            }, [], ops.textual
              ? {
                  input: (ev) =>
                    handlers.onLabelChange(
                      element.element_id,
                      (ev as { target: { value: string } }).target.value,
                    ),
                }
              : {}),
            h('span', { class: 'config-summary' }, configSummary(element)),
            ...(ops.structural
              ? [
                  h('button', { class: 'move-up' }, '↑', {
                    click: () => handlers.onMoveElement(element.element_id, -1),
                  }),
                  h('button', { class: 'move-down' }, '↓', {
                    click: () => handlers.onMoveElement(element.element_id, 1),
                  }),
                  h('button', { class: 'remove-element' }, 'remove', {
                    click: () => handlers.onRemoveElement(element.element_id),
                  }),
                ]
              : []),
          ]),
        ),
      ),
    ]),
  ]);
}

function analyticsTab(state: TemplateEditorState): VNode {
  if (!state.analytics) return h('p', {}, 'No analytics yet.');
  const a = state.analytics;
  return h('div', { class: 'analytics' }, [
    h('p', { class: 'total-users' }, `Total Users: ${a.total_users}`),
    h(
      'ul',
      { class: 'completion-bars' },
      Object.entries(a.element_completion).map(([elementId, entry]) =>
        h('li', { class: 'completion-row', 'data-element': elementId }, [
          h('span', { class: 'element-id' }, elementId),
          h('span', { class: 'filled' }, String(entry.filled)),
          h('div', {
            class: 'bar',
            style: `width: ${entry.rate === null ? 0 : Math.round(entry.rate * 100)}%`,
            'data-rate': entry.rate === null ? 'n/a' : String(entry.rate),
          }),
        ]),
      ),
    ),
  ]);
}

function feedbackTab(state: TemplateEditorState): VNode {
  if (!state.feedback.length) return h('p', {}, 'No feedback yet.');
  return h(
    'ul',
    { class: 'feedback-list' },
    state.feedback.map((entry) =>
      h('li', { class: 'feedback-entry' }, [
        h('span', { class: 'rating' }, `${entry.rating}/5`),
        h('span', { class: 'comment' }, entry.comment),
      ]),
    ),
  );
}

export function renderTemplateEditor(
  state: TemplateEditorState,
  handlers: TemplateEditorHandlers,
): VNode {
  const ops = allowedOperations(state.doc.state);
  const tabs: EditorTab[] = ['design', 'analytics', 'feedback'];
  return h('article', { class: 'template-editor' }, [
    h('header', {}, [
      h('h2', {}, `Template: ${state.doc.name}`),
      h('span', { class: 'state-badge' }, state.doc.state),
      h('span', { class: 'version' }, `v${state.doc.version}`),
      ...(ops.textual || ops.structural
        ? [h('button', { class: 'save-template' }, 'Save', { click: () => handlers.onSave() })]
        : []),
      ...ops.transitions.map((target) =>
        h('button', { class: 'transition', 'data-target': target }, `→ ${target}`, {
          click: () => handlers.onTransition(target),
        }),
      ),
    ]),
    ...(state.notice ? [h('p', { class: 'notice' }, state.notice)] : []),
    h(
      'nav',
      { class: 'tabs' },
      tabs.map((tab) =>
        h('button', { class: tab === state.tab ? 'tab active' : 'tab', 'data-tab': tab }, tab, {
          click: () => handlers.onSelectTab(tab),
        }),
      ),
    ),
    state.tab === 'design'
      ? designTab(state, handlers)
      : state.tab === 'analytics'
        ? analyticsTab(state)
        : feedbackTab(state),
  ]);
}
