// Name search over public profiles: debounced box, result list.

import { h, VNode } from '../vdom.js';
import type { SearchHit } from '../types.js';

export interface DiscoveryHandlers {
  onQueryInput(query: string): void;
  onOpenProfile(profileId: string): void;
}

export interface DiscoveryState {
  query: string;
  results: SearchHit[] | null; // null until the first non-empty query
}

export function renderDiscovery(state: DiscoveryState, handlers: DiscoveryHandlers): VNode {
  let body: VNode;
  if (state.results === null) {
    body = h('p', { class: 'prompt' }, 'Search researchers by full or partial name.');
  } else if (state.results.length === 0) {
    body = h('p', { class: 'no-results' }, 'No matching public profiles.');
  } else {
    body = h(
      'ul',
      { class: 'search-results' },
      state.results.map((hit) =>
        h('li', { class: 'search-hit', 'data-researcher': hit.researcher_id }, [
          h('span', { class: 'hit-name' }, hit.display_name),
          h(
            'span',
            { class: 'hit-profiles' },
            hit.public_profile_ids.map((pid) =>
              h('button', { class: 'open-profile', 'data-profile': pid }, 'view profile', {
                click: () => handlers.onOpenProfile(pid),
              }),
            ),
          ),
        ]),
      ),
    );
  }
  return h('section', { class: 'discovery' }, [
    h('h2', {}, 'Profile discovery'),
    h('input', {
      class: 'search-box',
      type: 'search',
      placeholder: 'e.g. maria pap',
      value: state.query,
    }, [], {
      input: (event) =>
        handlers.onQueryInput((event as { target: { value: string } }).target.value),
    }),
    body,
  ]);
}

/** Trailing-edge debounce for the search box. */
export function debounce<A extends unknown[]>(fn: (...args: A) => void, waitMs: number) {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), waitMs);
  };
}
