import { afterEach, describe, expect, it, vi } from 'vitest';

import { ApiClient, ENDPOINT_PATTERNS, RequestFailed } from '../src/api.js';
import { emptyFilter, toggleFacet } from '../src/filters.js';

function jsonResponse(body: unknown, status = 200) {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

describe('api client', () => {
  afterEach(() => vi.restoreAllMocks());

  it('exercises only documented endpoints', async () => {
    const fetchMock = vi
      .spyOn(globalThis, 'fetch')
      .mockImplementation(async () => jsonResponse({}));
    const api = new ApiClient('http://test');
    api.setToken('tok');

    await api.health();
    await api.registerResearcher('0000-0001-2345-6789', 'Maria');
    await api.syncResearcher('0000-0001-2345-6789');
    await api.indicators('0000-0001-2345-6789', emptyFilter());
    await api.listTemplates();
    await api.getTemplate('t1');
    await api.createTemplate({ template_id: 't1', name: 'T' });
    await api.updateTemplate('t1', { name: 'T2' });
    await api.transitionTemplate('t1', 'piloting');
    await api.grantPilotAccess('t1', 'r1');
    await api.templateAnalytics('t1');
    await api.submitFeedback('t1', 5, 'nice');
    await api.listFeedback('t1');
    await api.createProfile('t1');
    await api.profileView('p1', emptyFilter());
    await api.setElement('p1', 'e1', { text: 'x' });
    await api.setRoles('p1', 'w1', ['Software']);
    await api.setVisibility('p1', 'public');
    await api.search('maria');
    await api.summarize('p1', 'e1', 'paragraph', 150, false);

    expect(api.recordedPaths.length).toBe(20);
    for (const path of api.recordedPaths) {
      expect(
        ENDPOINT_PATTERNS.some((pattern) => pattern.test(path)),
        `undocumented path ${path}`,
      ).toBe(true);
    }
    expect(fetchMock).toHaveBeenCalledTimes(20);
  });

  it('sends bearer token and filter params', async () => {
    const fetchMock = vi.spyOn(globalThis, 'fetch').mockResolvedValue(jsonResponse({}));
    const api = new ApiClient('http://test', 'secret');
    const filter = toggleFacet(emptyFilter(), 'topics', 'T100');
    await api.profileView('p1', filter);
    const [url, init] = fetchMock.mock.calls[0] as [string, RequestInit];
    expect(url).toBe('http://test/api/profiles/p1/view?topics=T100');
    expect((init.headers as Record<string, string>)['Authorization']).toBe('Bearer secret');
  });

  it('raises RequestFailed carrying the machine-readable error body', async () => {
    vi.spyOn(globalThis, 'fetch').mockResolvedValue(
      jsonResponse({ code: 'forbidden', message: 'this profile is private' }, 403),
    );
    const api = new ApiClient('http://test');
    const failure = await api.profileView('p1', emptyFilter()).catch((e) => e);
    expect(failure).toBeInstanceOf(RequestFailed);
    expect(failure.status).toBe(403);
    expect(failure.error.code).toBe('forbidden');
  });
});
