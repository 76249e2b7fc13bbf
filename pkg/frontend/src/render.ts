/**
 * DOM rendering for the three confidence-grouped review tables.
 * Pure view: reads rows from the store, forwards clicks back to it.
 */

import { fetchExport } from './api';
import type { SessionStore } from './store';
import type { Confidence, LinkRow } from './types';

const SECTIONS: Array<{ confidence: Confidence; title: string }> = [
  { confidence: 'sure', title: 'Sure mapping' },
  { confidence: 'moderatelySure', title: 'Moderately sure mapping' },
  { confidence: 'improbable', title: 'Improbable mapping' },
];

const COLUMNS = ['M1', 'M2', 'Syn or Sem', 'Explanation', 'Global', 'Local', 'Level', 'Decision'];

const NAME_LIMIT = 16;

function nameCell(name: string): HTMLTableCellElement {
  const cell = document.createElement('td');
  if (name.length > NAME_LIMIT) {
    cell.textContent = `${name.slice(0, NAME_LIMIT - 1)}…`;
    cell.title = name; // full-text tooltip for truncated names
  } else {
    cell.textContent = name;
  }
  return cell;
}

function badge(text: string, className: string): HTMLSpanElement {
  const span = document.createElement('span');
  span.className = `badge ${className}`;
  span.textContent = text;
  return span;
}

function decisionCell(row: LinkRow, store: SessionStore): HTMLTableCellElement {
  const cell = document.createElement('td');
  cell.className = 'decision';
  if (row.decision === 'pending') {
    for (const decision of ['validated', 'deleted'] as const) {
      const button = document.createElement('button');
      button.textContent = decision === 'validated' ? 'Validate' : 'Delete';
      button.dataset.decision = decision;
      button.addEventListener('click', () => {
        void store.decide(row.id, decision);
      });
      cell.appendChild(button);
    }
  } else {
    cell.textContent = row.decision;
  }
  return cell;
}

function renderRow(row: LinkRow, store: SessionStore): HTMLTableRowElement {
  const tr = document.createElement('tr');
  tr.dataset.linkId = row.id;
  tr.dataset.decision = row.decision;
  if (row.decision === 'deleted') tr.classList.add('deleted');

  const left = nameCell(row.leftName);
  if (row.homonym) left.appendChild(badge('homonym', 'homonym'));
  if (row.hyponym) left.appendChild(badge('hyponym', 'hyponym'));
  tr.appendChild(left);
  tr.appendChild(nameCell(row.rightName));
  for (const value of [row.synOrSem, row.explanation, row.global, row.local, row.level]) {
    const cell = document.createElement('td');
    cell.textContent = value;
    tr.appendChild(cell);
  }
  tr.appendChild(decisionCell(row, store));
  return tr;
}

function renderSection(
  title: string,
  rows: LinkRow[],
  store: SessionStore,
): HTMLElement {
  const section = document.createElement('section');
  const heading = document.createElement('h2');
  heading.textContent = title;
  section.appendChild(heading);

  const table = document.createElement('table');
  const head = table.createTHead().insertRow();
  for (const column of COLUMNS) {
    const th = document.createElement('th');
    th.textContent = column;
    head.appendChild(th);
  }
  const body = table.createTBody();
  if (rows.length === 0) {
    const tr = body.insertRow();
    const cell = tr.insertCell();
    cell.colSpan = COLUMNS.length;
    cell.className = 'placeholder';
    cell.textContent = 'No mappings in this group.';
  } else {
    for (const row of rows) body.appendChild(renderRow(row, store));
  }
  section.appendChild(table);
  return section;
}

function renderNotice(store: SessionStore): HTMLElement | null {
  if (!store.notice) return null;
  const banner = document.createElement('div');
  banner.className = `notice ${store.notice.kind}`;
  banner.textContent = store.notice.message;
  const dismiss = document.createElement('button');
  dismiss.textContent = 'Dismiss';
  dismiss.addEventListener('click', () => store.dismissNotice());
  banner.appendChild(dismiss);
  return banner;
}

function renderLoadError(store: SessionStore): HTMLElement {
  const banner = document.createElement('div');
  banner.className = 'notice error';
  banner.textContent = `Cannot reach the review service: ${store.loadError}`;
  const retry = document.createElement('button');
  retry.textContent = 'Retry';
  retry.addEventListener('click', () => {
    void store.load();
  });
  banner.appendChild(retry);
  return banner;
}

function renderExportBar(
  container: HTMLElement,
  baseUrl: string,
  sessionId: string,
): HTMLElement {
  const bar = document.createElement('div');
  bar.className = 'export-bar';
  const button = document.createElement('button');
  button.textContent = 'Export validated mappings';
  const status = document.createElement('span');
  status.className = 'export-status';
  button.addEventListener('click', () => {
    void (async () => {
      try {
        const doc = await fetchExport(baseUrl, sessionId);
        if (doc.pending > 0) {
          status.textContent = `${doc.pending} pending`;
          return;
        }
        status.textContent = '';
        const blob = new Blob([JSON.stringify(doc, null, 2)], {
          type: 'application/json',
        });
        const anchor = document.createElement('a');
        anchor.href = URL.createObjectURL(blob);
        anchor.download = `${sessionId}-export.json`;
        container.appendChild(anchor);
        anchor.click();
        anchor.remove();
      } catch (error) {
        status.textContent = error instanceof Error ? error.message : String(error);
      }
    })();
  });
  bar.appendChild(button);
  bar.appendChild(status);
  return bar;
}

export function renderApp(
  container: HTMLElement,
  store: SessionStore,
  baseUrl: string,
  sessionId: string,
): void {
  container.replaceChildren();
  if (store.loadError !== null) {
    container.appendChild(renderLoadError(store));
    return;
  }
  const notice = renderNotice(store);
  if (notice) container.appendChild(notice);
  const links = store.links;
  for (const { confidence, title } of SECTIONS) {
    const rows = links.filter((row) => row.confidence === confidence);
    container.appendChild(renderSection(title, rows, store));
  }
  container.appendChild(renderExportBar(container, baseUrl, sessionId));
}
