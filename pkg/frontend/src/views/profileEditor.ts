// Owner-side editing: per-kind forms, CRediT role picker, AI draft button
// (suggestions land in the edit buffer, never auto-save), completeness meter.

import { h, VNode } from '../vdom.js';
import type { ProfileView, ViewElement } from '../types.js';

export const CREDIT_ROLES = [
  'Conceptualization',
  'Data curation',
  'Formal analysis',
  'Funding acquisition',
  'Investigation',
  'Methodology',
  'Project administration',
  'Resources',
  'Software',
  'Supervision',
  'Validation',
  'Visualization',
  'Writing – original draft',
  'Writing – review & editing',
] as const;

export interface EditorState {
  view: ProfileView;
  buffers: Record<string, string>; // element_id -> unsaved text
  aiOptIn: boolean;
  rolePicker: { workId: string; selected: string[] } | null;
  notice: string | null;
}

export interface EditorHandlers {
  onBufferChange(elementId: string, text: string): void;
  onSaveText(elementId: string): void;
  onSelectOption(elementId: string, option: string): void;
  onAiDraft(elementId: string): void;
  onToggleAiOptIn(): void;
  onToggleVisibility(): void;
  onOpenRolePicker(workId: string): void;
  onToggleRole(role: string): void;
  onSaveRoles(): void;
}

function textEditor(el: ViewElement, state: EditorState, handlers: EditorHandlers): VNode[] {
  const buffer = state.buffers[el.element_id] ?? el.text ?? '';
  const draftButton =
    el.kind === 'narrative' && el.ai_assist_enabled
      ? [
          h(
            'button',
            {
              class: 'ai-draft',
              'data-element': el.element_id,
              ...(state.aiOptIn ? {} : { disabled: 'disabled' }),
            },
            'AI draft',
            state.aiOptIn ? { click: () => handlers.onAiDraft(el.element_id) } : {},
          ),
        ]
      : [];
  return [
    h('textarea', { class: 'text-buffer', 'data-element': el.element_id, value: buffer }, [buffer], {
      input: (event) =>
        handlers.onBufferChange(
          el.element_id,
          (event as { target: { value: string } }).target.value,
        ),
    }),
    h('div', { class: 'row' }, [
      h('button', { class: 'save-text', 'data-element': el.element_id }, 'Save', {
        click: () => handlers.onSaveText(el.element_id),
      }),
      ...draftButton,
    ]),
  ];
}

function dropdownEditor(el: ViewElement, handlers: EditorHandlers): VNode[] {
  // options come from the template, so an invalid selection cannot be built
  return [
    h(
      'ul',
      { class: 'dropdown-options' },
      (el.options ?? []).map((option) =>
        h(
          'li',
          { class: option === el.selected ? 'option selected' : 'option' },
          option,
          { click: () => handlers.onSelectOption(el.element_id, option) },
        ),
      ),
    ),
  ];
}

function contributionEditor(el: ViewElement, state: EditorState, handlers: EditorHandlers): VNode[] {
  return [
    h(
      'ol',
      { class: 'works' },
      (el.works ?? []).map((work) =>
        h('li', { class: 'work', 'data-work-id': work.work_id }, [
          h('span', { class: 'work-title' }, work.title),
          h('span', { class: 'work-roles' }, work.roles.join(', ')),
          h('button', { class: 'edit-roles', 'data-work-id': work.work_id }, 'roles…', {
            click: () => handlers.onOpenRolePicker(work.work_id),
          }),
        ]),
      ),
    ),
  ];
}

function rolePicker(state: EditorState, handlers: EditorHandlers): VNode {
  const picker = state.rolePicker!;
  return h('div', { class: 'role-picker', 'data-work-id': picker.workId }, [
    h('h4', {}, 'Contribution roles'),
    h(
      'ul',
      {},
      CREDIT_ROLES.map((role) =>
        h(
          'li',
          { class: picker.selected.includes(role) ? 'role selected' : 'role' },
          role,
          { click: () => handlers.onToggleRole(role) },
        ),
      ),
    ),
    h('button', { class: 'save-roles' }, 'Save roles', { click: () => handlers.onSaveRoles() }),
  ]);
}

export function renderProfileEditor(state: EditorState, handlers: EditorHandlers): VNode {
  const view = state.view;
  const percent = Math.round(view.completeness * 100);
  return h('article', { class: 'profile-editor' }, [
    h('header', {}, [
      h('h2', {}, `Editing: ${view.researcher.display_name}`),
      h('div', { class: 'completeness' }, [
        h('span', { class: 'completeness-value' }, `${percent}%`),
        h('progress', { max: '100', value: String(percent) }),
      ]),
      h('label', { class: 'ai-opt-in' }, [
        h('input', {
          type: 'checkbox',
          class: 'ai-opt-in-toggle',
          ...(state.aiOptIn ? { checked: 'checked' } : {}),
        }, [], { change: () => handlers.onToggleAiOptIn() }),
        'Allow AI drafting',
      ]),
      h(
        'button',
        { class: 'visibility-toggle' },
        view.visibility === 'public' ? 'Make private' : 'Make public',
        { click: () => handlers.onToggleVisibility() },
      ),
    ]),
    ...(state.notice ? [h('p', { class: 'notice' }, state.notice)] : []),
    ...view.elements.map((el) => {
      let controls: VNode[];
      switch (el.kind) {
        case 'narrative':
        case 'text_field':
          controls = textEditor(el, state, handlers);
          break;
        case 'dropdown':
          controls = dropdownEditor(el, handlers);
          break;
        case 'contribution_list':
          controls = contributionEditor(el, state, handlers);
          break;
        default:
          controls = [h('p', { class: 'computed-note' }, 'Computed from your works.')];
      }
      return h(
        'section',
        { class: `element element-${el.kind}`, 'data-element': el.element_id },
        [h('h3', {}, el.label + (el.required ? ' *' : '')), ...controls],
      );
    }),
    ...(state.rolePicker ? [rolePicker(state, handlers)] : []),
  ]);
}
