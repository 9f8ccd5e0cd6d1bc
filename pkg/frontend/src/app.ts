// App shell: hash routing, session token handling, and the fetch->render
// loops that keep every displayed number a verbatim API payload value.

import { ApiClient, RequestFailed } from './api.js';
import { emptyFilter, FilterState, toggleFacet } from './filters.js';
import { h, mount, VNode } from './vdom.js';
import type { TemplateDoc, TemplateStateName } from './types.js';
import { debounce, renderDiscovery } from './views/discovery.js';
import { renderProfileViewer } from './views/profileViewer.js';
import { EditorState, renderProfileEditor } from './views/profileEditor.js';
import {
  addElement,
  EditorTab,
  moveElement,
  newDraft,
  removeElement,
  renderTemplateEditor,
  TemplateEditorState,
  updateElement,
} from './views/templateEditor.js';

export type Route =
  | { page: 'discovery' }
  | { page: 'view'; profileId: string }
  | { page: 'edit'; profileId: string }
  | { page: 'templates'; templateId?: string }
  | { page: 'settings' };

export function parseRoute(hash: string): Route {
  const parts = hash.replace(/^#\/?/, '').split('/').filter(Boolean);
  switch (parts[0]) {
    case 'profiles':
      if (parts[1] && parts[2] === 'edit') return { page: 'edit', profileId: parts[1] };
      if (parts[1]) return { page: 'view', profileId: parts[1] };
      return { page: 'discovery' };
    case 'templates':
      return { page: 'templates', templateId: parts[1] };
    case 'settings':
      return { page: 'settings' };
    default:
      return { page: 'discovery' };
  }
}

export function routeHash(route: Route): string {
  switch (route.page) {
    case 'discovery':
      return '#/';
    case 'view':
      return `#/profiles/${route.profileId}`;
    case 'edit':
      return `#/profiles/${route.profileId}/edit`;
    case 'templates':
      return route.templateId ? `#/templates/${route.templateId}` : '#/templates';
    case 'settings':
      return '#/settings';
  }
}

function friendlyError(error: unknown): VNode {
  if (error instanceof RequestFailed) {
    const heading = error.status === 403 ? 'Access denied' : error.status === 404 ? 'Not found' : 'Request failed';
    return h('section', { class: 'error-page', 'data-status': String(error.status) }, [
      h('h2', {}, heading),
      h('p', {}, error.error.message),
    ]);
  }
  return h('section', { class: 'error-page' }, [h('h2', {}, 'Something went wrong'), h('p', {}, String(error))]);
}

export class App {
  filter: FilterState = emptyFilter();

  constructor(
    public api: ApiClient,
    private root: Element,
    private storage: { getItem(k: string): string | null; setItem(k: string, v: string): void } =
      window.sessionStorage,
  ) {
    this.api.setToken(this.storage.getItem('token'));
  }

  start(): void {
    window.addEventListener('hashchange', () => void this.render());
    void this.render();
  }

  navigate(route: Route): void {
    window.location.hash = routeHash(route);
  }

  async render(): Promise<void> {
    const route = parseRoute(window.location.hash);
    try {
      switch (route.page) {
        case 'discovery':
          this.renderDiscoveryPage();
          break;
        case 'view':
          await this.renderViewerPage(route.profileId);
          break;
        case 'edit':
          await this.renderEditorPage(route.profileId);
          break;
        case 'templates':
          await this.renderTemplatesPage(route.templateId);
          break;
        case 'settings':
          this.renderSettingsPage();
          break;
      }
    } catch (error) {
      mount(this.root, this.shell(friendlyError(error)));
    }
  }

  private shell(content: VNode): VNode {
    return h('div', { class: 'shell' }, [
      h('nav', { class: 'topnav' }, [
        h('a', { href: '#/' }, 'Discovery'),
        h('a', { href: '#/templates' }, 'Templates'),
        h('a', { href: '#/settings' }, 'Settings'),
      ]),
      content,
    ]);
  }

  // -- discovery ------------------------------------------------------------

  private renderDiscoveryPage(): void {
    const state = { query: '', results: null as null | [] };
    const search = debounce(async (query: string) => {
      if (!query.trim()) {
        state.results = null;
        draw();
        return;
      }
      const results = await this.api.search(query, 20);
      mount(
        this.root,
        this.shell(
          renderDiscovery({ query, results }, {
            onQueryInput: (q) => search(q),
            onOpenProfile: (pid) => this.navigate({ page: 'view', profileId: pid }),
          }),
        ),
      );
    }, 200);
    const draw = () =>
      mount(
        this.root,
        this.shell(
          renderDiscovery(state, {
            onQueryInput: (q) => search(q),
            onOpenProfile: (pid) => this.navigate({ page: 'view', profileId: pid }),
          }),
        ),
      );
    draw();
  }

  // -- profile viewer -------------------------------------------------------------

  async renderViewerPage(profileId: string): Promise<void> {
    const view = await this.api.profileView(profileId, this.filter);
    const node = renderProfileViewer(view, this.filter, {
      onToggleFacet: (facet, value) => {
        this.filter = toggleFacet(this.filter, facet, value);
        void this.renderViewerPage(profileId);
      },
      onClearFilters: () => {
        this.filter = emptyFilter();
        void this.renderViewerPage(profileId);
      },
    });
    mount(this.root, this.shell(node));
  }

  // -- profile editor -------------------------------------------------------------

  async renderEditorPage(profileId: string): Promise<void> {
    const state: EditorState = {
      view: await this.api.profileView(profileId, emptyFilter()),
      buffers: {},
      aiOptIn: this.storage.getItem('ai_opt_in') === 'true',
      rolePicker: null,
      notice: null,
    };

    const refresh = async () => {
      state.view = await this.api.profileView(profileId, emptyFilter());
      draw();
    };

    const handlers = {
      onBufferChange: (elementId: string, textValue: string) => {
        state.buffers[elementId] = textValue;
      },
      onSaveText: async (elementId: string) => {
        const el = state.view.elements.find((e) => e.element_id === elementId)!;
        const body = { text: state.buffers[elementId] ?? el.text ?? '' };
        try {
          await this.api.setElement(profileId, elementId, body);
          state.notice = null;
          await refresh();
        } catch (error) {
          state.notice = error instanceof RequestFailed
            ? (error.status === 409 ? 'Profile changed elsewhere; reload and retry.' : error.error.message)
            : String(error);
          draw();
        }
      },
      onSelectOption: async (elementId: string, option: string) => {
        await this.api.setElement(profileId, elementId, { selected: option });
        await refresh();
      },
      onAiDraft: async (elementId: string) => {
        const suggestion = await this.api.summarize(profileId, elementId, 'paragraph', 150, true);
        // suggestion fills the buffer only; saving stays a human action
        state.buffers[elementId] = suggestion.text;
        state.notice = suggestion.disclaimer;
        draw();
      },
      onToggleAiOptIn: () => {
        state.aiOptIn = !state.aiOptIn;
        this.storage.setItem('ai_opt_in', String(state.aiOptIn));
        draw();
      },
      onToggleVisibility: async () => {
        const target = state.view.visibility === 'public' ? 'private' : 'public';
        await this.api.setVisibility(profileId, target);
        await refresh();
      },
      onOpenRolePicker: (workId: string) => {
        const works = state.view.elements.flatMap((e) => e.works ?? []);
        const current = works.find((w) => w.work_id === workId)?.roles ?? [];
        state.rolePicker = { workId, selected: [...current] };
        draw();
      },
      onToggleRole: (role: string) => {
        const picker = state.rolePicker!;
        picker.selected = picker.selected.includes(role)
          ? picker.selected.filter((r) => r !== role)
          : [...picker.selected, role];
        draw();
      },
      onSaveRoles: async () => {
        const picker = state.rolePicker!;
        await this.api.setRoles(profileId, picker.workId, picker.selected);
        state.rolePicker = null;
        await refresh();
      },
    };

    const draw = () => mount(this.root, this.shell(renderProfileEditor(state, handlers)));
    draw();
  }

  // -- template editor ----------------------------------------------------------------

  async renderTemplatesPage(templateId?: string): Promise<void> {
    if (!templateId) {
      const templates = await this.api.listTemplates();
      mount(this.root, this.shell(this.templateList(templates)));
      return;
    }
    const doc =
      templateId === 'new'
        ? newDraft(`template-${Date.now().toString(36)}`, 'New template')
        : await this.api.getTemplate(templateId);
    const state: TemplateEditorState = {
      doc,
      tab: 'design',
      analytics: null,
      feedback: [],
      notice: null,
    };
    let exists = templateId !== 'new';

    const handlers = {
      onAddElement: (kind: Parameters<typeof addElement>[1]) => {
        state.doc = addElement(state.doc, kind);
        draw();
      },
      onRemoveElement: (elementId: string) => {
        state.doc = removeElement(state.doc, elementId);
        draw();
      },
      onMoveElement: (elementId: string, delta: -1 | 1) => {
        state.doc = moveElement(state.doc, elementId, delta);
        draw();
      },
      onLabelChange: (elementId: string, label: string) => {
        state.doc = updateElement(state.doc, elementId, { label });
      },
      onNameChange: (name: string) => {
        state.doc = { ...state.doc, name };
      },
      onSave: async () => {
        try {
          state.doc = exists
            ? await this.api.updateTemplate(state.doc.template_id, state.doc)
            : await this.api.createTemplate(state.doc);
          exists = true;
          state.notice = 'Saved.';
        } catch (error) {
          state.notice = error instanceof RequestFailed ? error.error.message : String(error);
        }
        draw();
      },
      onTransition: async (target: TemplateStateName) => {
        try {
          state.doc = await this.api.transitionTemplate(state.doc.template_id, target);
          state.notice = `Now ${target}.`;
        } catch (error) {
          state.notice = error instanceof RequestFailed ? error.error.message : String(error);
        }
        draw();
      },
      onSelectTab: async (tab: EditorTab) => {
        state.tab = tab;
        if (tab === 'analytics') {
          state.analytics = await this.api.templateAnalytics(state.doc.template_id);
        }
        if (tab === 'feedback') {
          state.feedback = await this.api.listFeedback(state.doc.template_id);
        }
        draw();
      },
    };

    const draw = () => mount(this.root, this.shell(renderTemplateEditor(state, handlers)));
    draw();
  }

  private templateList(templates: TemplateDoc[]): VNode {
    return h('section', { class: 'template-list' }, [
      h('h2', {}, 'Templates'),
      h('a', { href: '#/templates/new', class: 'new-template' }, 'New template'),
      h(
        'ul',
        {},
        templates.map((t) =>
          h('li', { class: 'template-row', 'data-template': t.template_id }, [
            h('a', { href: `#/templates/${t.template_id}` }, t.name),
            h('span', { class: 'state-badge' }, t.state),
          ]),
        ),
      ),
    ]);
  }

  // -- settings ----------------------------------------------------------------

  private renderSettingsPage(): void {
    const current = this.storage.getItem('token') ?? '';
    const node = h('section', { class: 'settings' }, [
      h('h2', {}, 'Settings'),
      h('label', {}, [
        'API token',
        h('input', { class: 'token-input', type: 'password', value: current }, [], {
          change: (ev) => {
            const token = (ev as { target: { value: string } }).target.value.trim();
            this.storage.setItem('token', token);
            this.api.setToken(token || null);
          },
        }),
      ]),
      h('p', { class: 'hint' },
        'Stored in session storage only. Leave empty for anonymous browsing.'),
    ]);
    mount(this.root, this.shell(node));
  }
}
