import { describe, expect, it } from 'vitest';

import { byAttr, byClass, firstByClass, textOf } from '../src/vdom.js';
import { emptyFilter, toggleFacet } from '../src/filters.js';
import { renderProfileViewer } from '../src/views/profileViewer.js';
import { renderProfileEditor, CREDIT_ROLES } from '../src/views/profileEditor.js';
import {
  addElement,
  allowedOperations,
  ELEMENT_KINDS,
  moveElement,
  newDraft,
  removeElement,
  renderTemplateEditor,
  updateElement,
} from '../src/views/templateEditor.js';
import type { ProfileView } from '../src/types.js';

const noopViewer = { onToggleFacet: () => {}, onClearFilters: () => {} };

function sampleView(): ProfileView {
  return {
    profile_id: 'p1',
    researcher: { researcher_id: 'r1', orcid: '0000-0001-2345-6789', display_name: 'Maria' },
    template_id: 'informative-profile',
    template_version: 1,
    visibility: 'public',
    active_filter: { topics: [], work_types: [], licenses: [], access: null, year_range: null },
    completeness: 0.5,
    revision: 1,
    elements: [
      {
        element_id: 'panel',
        kind: 'indicator_panel',
        label: 'Key indicators',
        required: false,
        indicators: [
          { key: 'total_outputs', value: 6 },
          { key: 'open_access_share', value: 0.5 },
          { key: 'academic_age', value: 'n/a' },
        ],
      },
      {
        element_id: 'outputs',
        kind: 'contribution_list',
        label: 'Research outputs',
        required: true,
        total: 2,
        works: [
          {
            work_id: 'w1', doi: '10.1/a', title: 'Alpha', work_type: 'publication',
            year: 2020, venue: null, authors: [], citation_count: 3,
            popularity_score: null, influence_score: null, access: 'open',
            license: 'MIT', topics: [{ topic_id: 'T1', label: 'Networks' }],
            roles: ['Software'],
          },
          {
            work_id: 'w2', doi: null, title: 'Beta', work_type: 'dataset',
            year: 2021, venue: 'Repo', authors: [], citation_count: null,
            popularity_score: null, influence_score: null, access: 'open',
            license: null, topics: [], roles: [],
          },
        ],
        facets: {
          topics: [{ value: 'T1', label: 'Networks', count: 1 }],
          year: [{ value: 2021, count: 1 }, { value: 2020, count: 1 }],
        },
      },
      {
        element_id: 'summary',
        kind: 'narrative',
        label: 'Summary',
        required: true,
        text: '',
        ai_assist_enabled: true,
      },
    ],
  };
}

describe('profile viewer rendering', () => {
  it('renders indicator values verbatim from the payload', () => {
    const node = renderProfileViewer(sampleView(), emptyFilter(), noopViewer);
    const values = byClass(node, 'indicator-value');
    expect(values.map(textOf)).toEqual(['6', '0.5', 'n/a']);
  });

  it('shows the server-side work count and facet counts', () => {
    const node = renderProfileViewer(sampleView(), emptyFilter(), noopViewer);
    expect(textOf(firstByClass(node, 'work-count'))).toBe('2 works shown');
    const facetCounts = byClass(node, 'facet-count').map(textOf);
    expect(facetCounts).toEqual(['1', '1', '1']);
  });

  it('facet click handlers toggle the filter and chips appear', () => {
    let captured: [string, string | number] | null = null;
    const node = renderProfileViewer(sampleView(), emptyFilter(), {
      onToggleFacet: (facet, value) => (captured = [facet, value]),
      onClearFilters: () => {},
    });
    const facetValue = byAttr(node, 'data-facet-value', 'T1')[0];
    facetValue.events['click']!();
    expect(captured).toEqual(['topics', 'T1']);

    const active = toggleFacet(emptyFilter(), 'topics', 'T1');
    const withChip = renderProfileViewer(sampleView(), active, noopViewer);
    expect(byAttr(withChip, 'data-chip', 'topics:T1')).toHaveLength(1);
    expect(byClass(withChip, 'facet-value active')).toHaveLength(0); // class is split
    expect(
      byAttr(withChip, 'data-facet-value', 'T1')[0].attrs['class'],
    ).toContain('active');
  });

  it('elements appear in template order', () => {
    const node = renderProfileViewer(sampleView(), emptyFilter(), noopViewer);
    const ids = byClass(node, 'element').map((n) => n.attrs['data-element']);
    expect(ids).toEqual(['panel', 'outputs', 'summary']);
  });
});

describe('profile editor rendering', () => {
  it('offers all 14 CRediT roles in the picker', () => {
    expect(CREDIT_ROLES).toHaveLength(14);
    const state = {
      view: sampleView(),
      buffers: {},
      aiOptIn: false,
      rolePicker: { workId: 'w1', selected: ['Software'] },
      notice: null,
    };
    const node = renderProfileEditor(state, dummyEditorHandlers());
    const roles = byClass(node, 'role').concat(byClass(node, 'role selected'));
    const labels = new Set(
      byClass(node, 'role-picker').flatMap((p) =>
        p.children.flatMap((c) => (typeof c === 'string' ? [] : byClass(c as never, 'role'))),
      ),
    );
    expect(byClass(node, 'role-picker')).toHaveLength(1);
    expect(roles.length + labels.size).toBeGreaterThanOrEqual(14);
  });

  it('AI draft button is disabled until the user opts in', () => {
    const base = {
      view: sampleView(),
      buffers: {},
      rolePicker: null,
      notice: null,
    };
    const off = renderProfileEditor({ ...base, aiOptIn: false }, dummyEditorHandlers());
    expect(byClass(off, 'ai-draft')[0].attrs['disabled']).toBe('disabled');
    const on = renderProfileEditor({ ...base, aiOptIn: true }, dummyEditorHandlers());
    expect(on && byClass(on, 'ai-draft')[0].attrs['disabled']).toBeUndefined();
  });

  it('shows the server-computed completeness', () => {
    const state = {
      view: sampleView(), buffers: {}, aiOptIn: false, rolePicker: null, notice: null,
    };
    const node = renderProfileEditor(state, dummyEditorHandlers());
    expect(textOf(firstByClass(node, 'completeness-value'))).toBe('50%');
  });
});

function dummyEditorHandlers() {
  return {
    onBufferChange: () => {},
    onSaveText: () => {},
    onSelectOption: () => {},
    onAiDraft: () => {},
    onToggleAiOptIn: () => {},
    onToggleVisibility: () => {},
    onOpenRolePicker: () => {},
    onToggleRole: () => {},
    onSaveRoles: () => {},
  };
}

describe('template editor state', () => {
  it('builds a document with all five kinds', () => {
    let doc = newDraft('exp', 'Experimental');
    for (const kind of ELEMENT_KINDS) doc = addElement(doc, kind);
    expect(doc.elements.map((e) => e.kind)).toEqual(ELEMENT_KINDS);
    // defaults satisfy the server's validation rules
    const dropdown = doc.elements.find((e) => e.kind === 'dropdown')!;
    expect((dropdown.config['options'] as string[]).length).toBeGreaterThan(0);
  });

  it('reorders and removes in draft', () => {
    let doc = addElement(addElement(newDraft('exp', 'E'), 'narrative'), 'dropdown');
    const [first, second] = doc.elements.map((e) => e.element_id);
    doc = moveElement(doc, second, -1);
    expect(doc.elements[0].element_id).toBe(second);
    doc = removeElement(doc, first);
    expect(doc.elements).toHaveLength(1);
  });

  it('updates labels and configs', () => {
    let doc = addElement(newDraft('exp', 'E'), 'narrative');
    const id = doc.elements[0].element_id;
    doc = updateElement(doc, id, { label: 'Story', config: { ai_assist_enabled: true } });
    expect(doc.elements[0].label).toBe('Story');
    expect(doc.elements[0].config['ai_assist_enabled']).toBe(true);
    expect(doc.elements[0].config['max_length']).toBe(2000); // untouched keys survive
  });

  it('mirrors the lifecycle rules', () => {
    expect(allowedOperations('draft')).toEqual({
      structural: true, textual: true, transitions: ['piloting'],
    });
    expect(allowedOperations('piloting')).toEqual({
      structural: false, textual: true, transitions: ['published', 'draft'],
    });
    expect(allowedOperations('published')).toEqual({
      structural: false, textual: false, transitions: [],
    });
  });
});

describe('template editor rendering', () => {
  it('disables the palette while piloting, with an explanatory hint', () => {
    let doc = addElement(newDraft('exp', 'E'), 'narrative');
    doc = { ...doc, state: 'piloting' };
    const node = renderTemplateEditor(
      { doc, tab: 'design', analytics: null, feedback: [], notice: null },
      dummyTemplateHandlers(),
    );
    const items = byClass(node, 'palette-item');
    expect(items).toHaveLength(5);
    for (const item of items) {
      expect(item.attrs['disabled']).toBe('disabled');
      expect(item.attrs['title']).toContain('frozen');
    }
    expect(byClass(node, 'remove-element')).toHaveLength(0);
  });

  it('analytics bars carry the exact API rates', () => {
    const doc = addElement(newDraft('exp', 'E'), 'narrative');
    const node = renderTemplateEditor(
      {
        doc: { ...doc, state: 'piloting' },
        tab: 'analytics',
        analytics: {
          template_id: 'exp',
          total_users: 3,
          element_completion: {
            a: { filled: 2, rate: 2 / 3 },
            b: { filled: 0, rate: 0 },
          },
        },
        feedback: [],
        notice: null,
      },
      dummyTemplateHandlers(),
    );
    expect(textOf(firstByClass(node, 'total-users'))).toBe('Total Users: 3');
    const bars = byClass(node, 'bar');
    expect(bars.map((b) => b.attrs['data-rate'])).toEqual([String(2 / 3), '0']);
  });

  it('published templates expose no transitions or save button', () => {
    const doc = { ...addElement(newDraft('exp', 'E'), 'narrative'), state: 'published' as const };
    const node = renderTemplateEditor(
      { doc, tab: 'design', analytics: null, feedback: [], notice: null },
      dummyTemplateHandlers(),
    );
    expect(byClass(node, 'transition')).toHaveLength(0);
    expect(byClass(node, 'save-template')).toHaveLength(0);
  });
});

function dummyTemplateHandlers() {
  return {
    onAddElement: () => {},
    onRemoveElement: () => {},
    onMoveElement: () => {},
    onLabelChange: () => {},
    onNameChange: () => {},
    onSave: () => {},
    onTransition: () => {},
    onSelectTab: () => {},
  };
}
