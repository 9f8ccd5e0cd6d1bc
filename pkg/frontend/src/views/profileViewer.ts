// Read-only profile page: elements in template order, facet panel,
// indicator values. Values are echoed verbatim from the API payload —
// the client never recomputes an indicator.

import { h, VNode } from '../vdom.js';
import type { FacetEntry, ProfileView, ViewElement, WorkPayload } from '../types.js';
import type { FilterState } from '../filters.js';
import { chips, isActive } from '../filters.js';

export interface ViewerHandlers {
  onToggleFacet(facet: string, value: string | number): void;
  onClearFilters(): void;
}

export function indicatorValueText(value: number | string): string {
  return String(value);
}

function renderWork(work: WorkPayload): VNode {
  const meta: string[] = [work.work_type];
  if (work.year !== null) meta.push(String(work.year));
  if (work.venue) meta.push(work.venue);
  return h('li', { class: 'work', 'data-work-id': work.work_id }, [
    h('span', { class: 'work-title' }, work.title),
    h('span', { class: 'work-meta' }, meta.join(' · ')),
    ...(work.roles.length
      ? [h('span', { class: 'work-roles' }, work.roles.join(', '))]
      : []),
    ...(work.topics.length
      ? [h('span', { class: 'work-topics' }, work.topics.map((t) => t.label).join(', '))]
      : []),
  ]);
}

function renderFacet(
  name: string,
  entries: FacetEntry[],
  filter: FilterState,
  handlers: ViewerHandlers,
): VNode {
  return h('div', { class: 'facet', 'data-facet': name }, [
    h('h4', {}, name.replace('_', ' ')),
    h(
      'ul',
      {},
      entries.map((entry) =>
        h(
          'li',
          {
            class: isActive(filter, name, entry.value) ? 'facet-value active' : 'facet-value',
            'data-facet-value': String(entry.value),
          },
          [
            h('span', { class: 'facet-label' }, entry.label ?? String(entry.value)),
            h('span', { class: 'facet-count' }, String(entry.count)),
          ],
          { click: () => handlers.onToggleFacet(name, entry.value) },
        ),
      ),
    ),
  ]);
}

function renderElement(el: ViewElement, filter: FilterState, handlers: ViewerHandlers): VNode {
  const body: VNode[] = [];
  switch (el.kind) {
    case 'narrative':
    case 'text_field':
      body.push(h('p', { class: 'prose' }, el.text ?? ''));
      break;
    case 'dropdown':
      body.push(h('p', { class: 'selection' }, el.selected ?? '—'));
      break;
    case 'indicator_panel':
      body.push(
        h(
          'dl',
          { class: 'indicators' },
          (el.indicators ?? []).flatMap((row) => [
            h('dt', {}, row.key),
            h('dd', { class: 'indicator-value', 'data-key': row.key },
              indicatorValueText(row.value)),
          ]),
        ),
      );
      break;
    case 'contribution_list':
      body.push(
        h('p', { class: 'work-count' }, `${el.total ?? 0} works shown`),
        h('div', { class: 'facet-panel' },
          Object.entries(el.facets ?? {}).map(([name, entries]) =>
            renderFacet(name, entries, filter, handlers),
          ),
        ),
        h('ol', { class: 'works' }, (el.works ?? []).map(renderWork)),
      );
      break;
  }
  return h('section', { class: `element element-${el.kind}`, 'data-element': el.element_id }, [
    h('h3', {}, el.label),
    ...body,
  ]);
}

export function renderProfileViewer(
  view: ProfileView,
  filter: FilterState,
  handlers: ViewerHandlers,
): VNode {
  const active = chips(filter);
  return h('article', { class: 'profile-viewer' }, [
    h('header', {}, [
      h('h2', {}, view.researcher.display_name),
      h('p', { class: 'orcid' }, view.researcher.orcid),
      h('p', { class: 'template-name' }, `Template: ${view.template_id}`),
    ]),
    h('div', { class: 'filter-chips' }, [
      ...active.map(([facet, value]) =>
        h('button', { class: 'chip', 'data-chip': `${facet}:${value}` },
          `${facet}: ${value} ✕`,
          { click: () => handlers.onToggleFacet(facet, value) }),
      ),
      ...(active.length
        ? [h('button', { class: 'chip clear' }, 'clear all', {
            click: () => handlers.onClearFilters(),
          })]
        : []),
    ]),
    ...view.elements.map((el) => renderElement(el, filter, handlers)),
  ]);
}
