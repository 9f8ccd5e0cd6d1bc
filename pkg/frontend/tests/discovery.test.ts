import { describe, expect, it, vi } from 'vitest';

import { byClass, firstByClass, textOf } from '../src/vdom.js';
import { debounce, renderDiscovery } from '../src/views/discovery.js';

const noop = { onQueryInput: () => {}, onOpenProfile: () => {} };

describe('discovery view', () => {
  it('shows a prompt before any query', () => {
    const node = renderDiscovery({ query: '', results: null }, noop);
    expect(textOf(firstByClass(node, 'prompt'))).toContain('Search researchers');
    expect(byClass(node, 'no-results')).toHaveLength(0);
  });

  it('renders hits with profile links', () => {
    let opened: string | null = null;
    const node = renderDiscovery(
      {
        query: 'mar',
        results: [
          { researcher_id: 'r1', display_name: 'Maria Papadopoulou', public_profile_ids: ['p1'] },
          { researcher_id: 'r2', display_name: 'Mario Rossi', public_profile_ids: ['p2', 'p3'] },
        ],
      },
      { onQueryInput: () => {}, onOpenProfile: (pid) => (opened = pid) },
    );
    const names = byClass(node, 'hit-name').map(textOf);
    expect(names).toEqual(['Maria Papadopoulou', 'Mario Rossi']);
    expect(byClass(node, 'open-profile')).toHaveLength(3);
    byClass(node, 'open-profile')[0].events['click']!();
    expect(opened).toBe('p1');
  });

  it('distinguishes empty results from the initial prompt', () => {
    const node = renderDiscovery({ query: 'zzz', results: [] }, noop);
    expect(byClass(node, 'no-results')).toHaveLength(1);
    expect(byClass(node, 'prompt')).toHaveLength(0);
  });

  it('debounce fires once on the trailing edge', async () => {
    vi.useFakeTimers();
    const calls: string[] = [];
    const run = debounce((q: string) => calls.push(q), 200);
    run('m');
    run('ma');
    run('mar');
    vi.advanceTimersByTime(150);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(100);
    expect(calls).toEqual(['mar']);
    vi.useRealTimers();
  });
});
