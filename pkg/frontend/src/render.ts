// DOM scaffold plus idempotent updates. The scaffold (query form, banner,
// session view, edit pane) is mounted once so typed form input survives
// re-renders; updateApp only touches what the state owns.

import {
  canAccept,
  canReject,
  canSubmit,
  traceSegments,
  type RecommendationPayload,
  type ViewState,
} from "./state";

export interface Handlers {
  onSubmit(pattern: string, pre: string, post: string): void;
  onReject(): void;
  onAccept(rec: RecommendationPayload): void;
  onPaneInput(text: string): void;
  onRestore(): void;
  onCopy(): void;
  onDismissBanner(): void;
}

export interface AppDom {
  root: HTMLElement;
  patternInput: HTMLInputElement;
  preInput: HTMLInputElement;
  postInput: HTMLInputElement;
  submitButton: HTMLButtonElement;
  banner: HTMLElement;
  bannerText: HTMLElement;
  sessionView: HTMLElement;
  tierBadge: HTMLElement;
  statusLabel: HTMLElement;
  rejectButton: HTMLButtonElement;
  traceBar: HTMLElement;
  warnings: HTMLElement;
  cards: HTMLElement;
  editPane: HTMLElement;
  paneText: HTMLTextAreaElement;
  copyButton: HTMLButtonElement;
  restoreButton: HTMLButtonElement;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text = "",
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text) {
    node.textContent = text;
  }
  return node;
}

export function mountApp(root: HTMLElement, handlers: Handlers): AppDom {
  const doc = root.ownerDocument;
  root.textContent = "";

  const header = el(doc, "header");
  header.appendChild(el(doc, "h1", {}, "snap"));
  header.appendChild(
    el(doc, "p", { class: "tagline" }, "search, inspect, accept or reject, then edit"),
  );
  root.appendChild(header);

  const banner = el(doc, "div", { id: "banner", class: "banner", hidden: "" });
  const bannerText = el(doc, "span", { id: "banner-text" });
  const dismiss = el(doc, "button", { id: "banner-dismiss", type: "button" }, "dismiss");
  dismiss.addEventListener("click", () => handlers.onDismissBanner());
  banner.appendChild(bannerText);
  banner.appendChild(dismiss);
  root.appendChild(banner);

  const form = el(doc, "form", { id: "query-form" });
  const patternInput = el(doc, "input", {
    id: "pattern-input",
    placeholder: "API pattern, e.g. appendToGroup",
  });
  const preInput = el(doc, "input", { id: "pre-input", placeholder: "pre context (optional)" });
  const postInput = el(doc, "input", { id: "post-input", placeholder: "post context (optional)" });
  const submitButton = el(doc, "button", { id: "submit-btn", type: "submit" }, "Search");
  form.append(patternInput, preInput, postInput, submitButton);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    handlers.onSubmit(patternInput.value, preInput.value, postInput.value);
  });
  root.appendChild(form);

  const sessionView = el(doc, "section", { id: "session-view", hidden: "" });
  const head = el(doc, "div", { class: "session-head" });
  const tierBadge = el(doc, "span", { id: "tier-badge", class: "badge" });
  const statusLabel = el(doc, "span", { id: "status-label" });
  const rejectButton = el(
    doc,
    "button",
    { id: "reject-btn", type: "button" },
    "Reject (search next tier)",
  );
  rejectButton.addEventListener("click", () => handlers.onReject());
  head.append(tierBadge, statusLabel, rejectButton);
  const traceBar = el(doc, "div", { id: "trace-bar", class: "trace-bar" });
  const warnings = el(doc, "div", { id: "warnings", class: "warnings" });
  const cards = el(doc, "div", { id: "cards" });
  sessionView.append(head, traceBar, warnings, cards);
  root.appendChild(sessionView);

  const editPane = el(doc, "section", { id: "edit-pane", hidden: "" });
  editPane.appendChild(el(doc, "h2", {}, "Accepted skeleton"));
  const paneText = el(doc, "textarea", { id: "pane-text", rows: "12" });
  paneText.addEventListener("input", () => handlers.onPaneInput(paneText.value));
  const paneButtons = el(doc, "div", { class: "pane-buttons" });
  const copyButton = el(doc, "button", { id: "copy-btn", type: "button" }, "Copy");
  copyButton.addEventListener("click", () => handlers.onCopy());
  const restoreButton = el(
    doc,
    "button",
    { id: "restore-btn", type: "button" },
    "Restore original",
  );
  restoreButton.addEventListener("click", () => handlers.onRestore());
  paneButtons.append(copyButton, restoreButton);
  editPane.append(paneText, paneButtons);
  root.appendChild(editPane);

  return {
    root,
    patternInput,
    preInput,
    postInput,
    submitButton,
    banner,
    bannerText,
    sessionView,
    tierBadge,
    statusLabel,
    rejectButton,
    traceBar,
    warnings,
    cards,
    editPane,
    paneText,
    copyButton,
    restoreButton,
  };
}

function renderCard(
  doc: Document,
  rec: RecommendationPayload,
  state: ViewState,
  handlers: Handlers,
): HTMLElement {
  const card = el(doc, "article", { class: "card", "data-rec-id": rec.id });
  card.appendChild(el(doc, "div", { class: "symbols" }, rec.symbols.join("  ")));
  card.appendChild(
    el(
      doc,
      "div",
      { class: "meta" },
      `support ${rec.support} · score ${rec.score.toFixed(2)} · ` +
        `${rec.exemplar_ids.length} exemplar(s)`,
    ),
  );
  const skeleton = el(doc, "pre", { class: "skeleton" });
  skeleton.textContent = rec.skeleton;
  card.appendChild(skeleton);
  const accept = el(doc, "button", { class: "accept-btn", type: "button" }, "Accept");
  accept.disabled = !canAccept(state);
  accept.addEventListener("click", () => handlers.onAccept(rec));
  card.appendChild(accept);
  return card;
}

export function updateApp(dom: AppDom, state: ViewState, handlers: Handlers): void {
  const doc = dom.root.ownerDocument;

  dom.banner.hidden = state.banner === null;
  dom.bannerText.textContent = state.banner ?? "";

  dom.submitButton.disabled = !canSubmit(state);

  if (state.payload === null) {
    dom.sessionView.hidden = true;
  } else {
    const payload = state.payload;
    dom.sessionView.hidden = false;
    dom.tierBadge.textContent = payload.tier;
    dom.statusLabel.textContent = payload.status;
    dom.rejectButton.disabled = !canReject(state);

    dom.traceBar.textContent = "";
    for (const segment of traceSegments(payload.trace)) {
      dom.traceBar.appendChild(
        el(doc, "span", { class: "trace-chip" }, `${segment.label} ${segment.value}`),
      );
    }

    dom.warnings.textContent = "";
    for (const warning of payload.trace.warnings) {
      dom.warnings.appendChild(el(doc, "div", { class: "warning" }, warning));
    }

    dom.cards.textContent = "";
    if (payload.recommendations.length === 0) {
      dom.cards.appendChild(
        el(doc, "p", { class: "empty" }, "No recommendations at this tier."),
      );
    }
    for (const rec of payload.recommendations) {
      dom.cards.appendChild(renderCard(doc, rec, state, handlers));
    }
  }

  if (state.pane === null) {
    dom.editPane.hidden = true;
  } else {
    dom.editPane.hidden = false;
    if (dom.paneText.value !== state.pane.text) {
      dom.paneText.value = state.pane.text; // avoid clobbering the caret on echo
    }
  }
}
